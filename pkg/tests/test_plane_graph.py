"""
Tests for plane graphs: embedding, face tracing, cycles and census helpers.
"""

import networkx as nx
import pytest

from src.errors import DisconnectedError, InvalidRotationError, NonPlanarError, NotACycleError, NotSimpleError
from src.graph.plane_graph import (
    PlaneGraph,
    build_embedding,
    canonical_cycle,
    counting_identities,
    embed_graph,
    face_census,
    induced_plane_subgraph,
    is_facial,
    separating_cycles,
    short_cycles,
    split_by_cycle,
    triangle_count,
    triangles,
    validate_cycle,
)

# C5 with a pendant vertex on each side of the cycle, both hanging from 0
TWO_SIDED_ROTATION = {0: (1, 5, 4, 6), 1: (0, 2), 2: (1, 3), 3: (2, 4), 4: (3, 0), 5: (0,), 6: (0,)}


# ============================================================================
# UNIT TESTS - Embedding
# ============================================================================

class TestBuildEmbeddingUnit:
    """Unit tests for build_embedding and embed_graph."""

    @pytest.mark.unit
    def test_k4_has_four_triangular_faces(self, k4):
        """K4 embeds with n=4, m=6 and four faces of length 3."""
        assert (k4.n, k4.m) == (4, 6)
        assert face_census(k4) == {3: 4}

    @pytest.mark.unit
    def test_cycle_has_two_faces(self, c5):
        assert face_census(c5) == {5: 2}

    @pytest.mark.unit
    def test_cube_faces(self, cube):
        assert face_census(cube) == {4: 6}

    @pytest.mark.unit
    def test_k4prime_census(self, k4prime):
        """K4' has one triangle and three 5-faces."""
        assert (k4prime.n, k4prime.m) == (7, 9)
        assert face_census(k4prime) == {3: 1, 5: 3}
        assert triangle_count(k4prime) == 1

    @pytest.mark.unit
    def test_embedding_ignores_edge_order(self):
        edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]
        assert build_embedding(edges).rotation == build_embedding(list(reversed(edges))).rotation

    @pytest.mark.unit
    def test_single_vertex(self):
        g = build_embedding([], vertices=[0])
        assert (g.n, g.m, len(g.faces)) == (1, 0, 1)

    @pytest.mark.unit
    def test_single_edge_has_one_face_of_length_two(self):
        g = build_embedding([(0, 1)])
        assert face_census(g) == {2: 1}

    @pytest.mark.unit
    def test_path_face_is_not_a_simple_cycle(self):
        g = build_embedding([(0, 1), (1, 2)])
        assert len(g.faces) == 1
        assert g.faces[0].length == 4
        assert not g.faces[0].is_simple_cycle()

    @pytest.mark.unit
    def test_k5_is_not_planar(self):
        with pytest.raises(NonPlanarError):
            embed_graph(nx.complete_graph(5))

    @pytest.mark.unit
    def test_k33_is_not_planar(self):
        with pytest.raises(NonPlanarError):
            embed_graph(nx.complete_bipartite_graph(3, 3))

    @pytest.mark.unit
    def test_loop_rejected(self):
        with pytest.raises(NotSimpleError):
            build_embedding([(0, 0), (0, 1)])

    @pytest.mark.unit
    def test_parallel_edge_rejected(self):
        with pytest.raises(NotSimpleError):
            build_embedding([(0, 1), (1, 0)])

    @pytest.mark.unit
    def test_disconnected_rejected(self):
        with pytest.raises(DisconnectedError):
            build_embedding([(0, 1), (2, 3)])


class TestPlaneGraphValidationUnit:
    """Unit tests for rotation-system validation."""

    @pytest.mark.unit
    def test_asymmetric_rotation_rejected(self):
        with pytest.raises(InvalidRotationError):
            PlaneGraph(rotation={0: (1,), 1: ()})

    @pytest.mark.unit
    def test_toroidal_rotation_rejected(self):
        """Sorted rotations of K4 trace only two faces, so Euler fails."""
        with pytest.raises(InvalidRotationError):
            PlaneGraph(rotation={0: (1, 2, 3), 1: (0, 2, 3), 2: (0, 1, 3), 3: (0, 1, 2)})

    @pytest.mark.unit
    def test_explicit_rotation_accepted(self):
        g = PlaneGraph(rotation=TWO_SIDED_ROTATION)
        assert face_census(g) == {7: 2}


# ============================================================================
# UNIT TESTS - Triangles and cycles
# ============================================================================

class TestTrianglesUnit:
    """Unit tests for the triangle census."""

    @pytest.mark.unit
    def test_k4_triangles(self, k4):
        assert triangles(k4) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]

    @pytest.mark.unit
    def test_octahedron_has_eight(self, octahedron):
        assert triangle_count(octahedron) == 8

    @pytest.mark.unit
    def test_accepts_networkx_graph(self):
        assert triangle_count(nx.cycle_graph(6)) == 0


class TestCyclesUnit:
    """Unit tests for validate_cycle, short_cycles and canonical_cycle."""

    @pytest.mark.unit
    def test_validate_cycle_accepts_c4(self, c4):
        assert validate_cycle(c4, [0, 1, 2, 3]) == (0, 1, 2, 3)

    @pytest.mark.unit
    def test_validate_cycle_rejects_non_edges(self, c4):
        with pytest.raises(NotACycleError):
            validate_cycle(c4, [0, 2, 1, 3])

    @pytest.mark.unit
    def test_validate_cycle_rejects_short_sequences(self, c4):
        with pytest.raises(NotACycleError):
            validate_cycle(c4, [0, 1])

    @pytest.mark.unit
    def test_canonical_cycle(self):
        assert canonical_cycle((2, 1, 0, 3)) == (0, 1, 2, 3)
        assert canonical_cycle((0, 3, 2, 1)) == (0, 1, 2, 3)

    @pytest.mark.unit
    def test_short_cycles_of_k4(self, k4):
        """Four triangles come first, then the three 4-cycles."""
        cycles = short_cycles(k4, 4)
        assert len(cycles) == 7
        assert cycles[:4] == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
        assert set(cycles[4:]) == {(0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3)}

    @pytest.mark.unit
    def test_short_cycles_below_three(self, k4):
        assert short_cycles(k4, 2) == []


# ============================================================================
# UNIT TESTS - Sides of a cycle
# ============================================================================

class TestSplitByCycleUnit:
    """Unit tests for split_by_cycle, is_facial and separating_cycles."""

    @pytest.mark.unit
    def test_face_walk_has_empty_interior(self, k4prime):
        """The walk of any face keeps no vertex on its face side."""
        for face in k4prime.faces:
            split = split_by_cycle(k4prime, face.vertices)
            assert split.interior == frozenset()
            assert split.exterior == frozenset(k4prime.vertices) - set(face.vertices)

    @pytest.mark.unit
    def test_reversal_swaps_sides(self, k4):
        for face in k4.faces:
            forward = split_by_cycle(k4, face.vertices)
            backward = split_by_cycle(k4, tuple(reversed(face.vertices)))
            assert forward.interior == backward.exterior
            assert forward.exterior == backward.interior

    @pytest.mark.unit
    def test_two_sided_cycle(self):
        g = PlaneGraph(rotation=TWO_SIDED_ROTATION)
        split = split_by_cycle(g, (0, 1, 2, 3, 4))
        assert split.interior == frozenset({5})
        assert split.exterior == frozenset({6})
        assert split.is_separating

    @pytest.mark.unit
    def test_is_facial(self, k4prime):
        assert is_facial(k4prime, (4, 5, 6))
        assert is_facial(k4prime, (0, 1, 4, 5, 2))

    @pytest.mark.unit
    def test_chorded_cycle_is_not_facial(self, k4prime):
        """0-1-4-5-6-3 leaves only vertex 2 outside but carries the chord 4-6."""
        assert not is_facial(k4prime, (0, 1, 4, 5, 6, 3))

    @pytest.mark.unit
    def test_separating_triangle(self):
        """In K5 minus an edge, the triangle 0-1-2 separates 3 from 4."""
        graph = nx.complete_graph(5)
        graph.remove_edge(3, 4)
        g = embed_graph(graph)
        splits = separating_cycles(g, 3)
        assert len(splits) == 1
        assert splits[0].cycle == (0, 1, 2)
        assert {splits[0].interior, splits[0].exterior} == {frozenset({3}), frozenset({4})}

    @pytest.mark.unit
    def test_side_name_checked(self, c4):
        split = split_by_cycle(c4, (0, 1, 2, 3))
        with pytest.raises(ValueError):
            split.side("middle")


# ============================================================================
# UNIT TESTS - Derived graphs and identities
# ============================================================================

class TestHelpersUnit:
    """Unit tests for induced subgraphs and counting identities."""

    @pytest.mark.unit
    def test_induced_triangle(self, k4):
        sub = induced_plane_subgraph(k4, [0, 1, 2])
        assert (sub.n, sub.m, len(sub.faces)) == (3, 3, 2)

    @pytest.mark.unit
    def test_counting_identities_k4prime(self, k4prime):
        """One 3-face and no 4-face: 2m >= 5f - 2 holds with equality (18 = 18)."""
        checks = counting_identities(k4prime)
        assert checks == {"euler": True, "handshake": True, "one_triangle_bound": True}

    @pytest.mark.unit
    def test_counting_identities_skip_bound_when_inapplicable(self, cube):
        assert "one_triangle_bound" not in counting_identities(cube)
