"""Write every corpus slice named in the manifest as a planar_code file.

The files let harness runs use ``planar verify --corpus`` instead of
re-enumerating, and the manifest hash recorded next to them pins what
was scanned.
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from config.settings import settings  # noqa: E402
from src.catalog.enumerate import enumerate_small_planar  # noqa: E402
from src.catalog.formats import write_planar_code  # noqa: E402
from src.catalog.manifest import load_manifest, manifest_hash  # noqa: E402

OUTPUT_DIR = Path("input/corpus")


def main() -> None:
    """Generate one planar_code file per manifest slice"""
    OUTPUT_DIR.mkdir(parents=True, exist_ok=True)
    slices = load_manifest()

    print(f"Building {len(slices)} corpus slices from {settings.corpus_manifest_path}...")
    for name, corpus_slice in slices.items():
        graphs = list(enumerate_small_planar(corpus_slice.filter))
        output_path = OUTPUT_DIR / f"{name}.pc"
        output_path.write_bytes(write_planar_code(graphs))
        print(f"  {name}: {len(graphs)} graphs ({corpus_slice.filter.describe()})")

    digest = manifest_hash()
    (OUTPUT_DIR / "MANIFEST_SHA256").write_text(digest + "\n")
    print(f"✓ Wrote {len(slices)} slices to {OUTPUT_DIR} (manifest {digest[:12]})")


if __name__ == "__main__":
    main()
