"""
Test package for the planar toolkit.

Suites:
- Plane graphs and graph surgery
- Constrained 3-coloring and the reduction engine
- Corpus enumeration, codecs and the theorem harness
- Command line

Markers: unit, integration, slow, corpus (see pytest.ini).

    pytest -m "not slow"            # everything fast
    pytest -m slow                  # acceptance-scale corpus scans
    pytest tests/test_reductions.py
"""
