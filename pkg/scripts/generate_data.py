"""Regenerate the bundled seed and fixture documents.

    python3 scripts/generate_data.py [--check]

With ``--check`` nothing is written; the script exits 1 if any bundled file
differs from what the builders produce.
"""

import argparse
import sys
from pathlib import Path

from lenslab import examples as ex
from lenslab.constructions import terminal_lens
from lenslab.fincat import coproduct_cat, terminal_category, walking_arrow
from lenslab.io import serialize
from lenslab.lens import identity_lens
from lenslab.seeds import builtin_seeds

DATA = Path(__file__).resolve().parents[1] / "src" / "lenslab" / "data"


def fixtures() -> dict:
    p, q = ex.build_codesign_example(), ex.alternative_strategy()
    e0, e1 = ex.disagreeing_experts()
    machine = ex.build_state_machine_example()
    split = coproduct_cat(walking_arrow(), terminal_category()).cat.relabel("2+1")
    return {
        "codesign": p.opinion,
        "codesign_alternative": q.opinion,
        "codesign_experts": {"main": p.opinion, "alternative": q.opinion},
        "experts_empty_p": e0.opinion,
        "experts_empty_q": e1.opinion,
        "state_lens": machine.state_lens,
        "mode_lens": machine.mode_lens,
        "bios_os": ex.build_bios_os_example(),
        "arrow_to_point": terminal_lens(walking_arrow()),
        "arrow_plus_point_identity": identity_lens(split),
    }


def outputs() -> dict[Path, str]:
    out = {}
    for name, cat in builtin_seeds().items():
        out[DATA / "seeds" / "v1" / f"{name}.json"] = serialize(cat)
    for name, x in fixtures().items():
        out[DATA / "fixtures" / "v1" / f"{name}.json"] = serialize(x)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true")
    args = ap.parse_args(argv)
    stale = []
    for path, text in outputs().items():
        current = path.read_text(encoding="utf-8") if path.exists() else None
        if current == text:
            continue
        stale.append(path)
        if not args.check:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
    for path in stale:
        print(("stale: " if args.check else "wrote: ") + str(path.relative_to(DATA.parents[2])))
    return 1 if (args.check and stale) else 0


if __name__ == "__main__":
    sys.exit(main())
