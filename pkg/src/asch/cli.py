"""``asch`` command line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails
(the witness is printed), 2 for usage or input-format errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import textio
from .clique_fission import (
    delsarte_bound,
    fission,
    recover_fission,
    validate_spread,
    verify_tight_regularity,
)
from .errors import CheckFailed, UsageError
from .gold_code import build_gold_code, codeword_lines, rm_coset_partition, scheme_from_code
from .imprimitivity import antipodal_action, find_closed_subsets, quotient_scheme, recognize_cover
from .muwm import muwm_bound, verify_unbiased, weighing_families
from .scheme_core import verify_axioms
from .spectra import compute_spectrum, verify_duality


class Run:
    """Collects emitted files and writes the manifest."""

    def __init__(self, command: str, inputs: List[str], outdir: Path):
        self.command = command
        self.inputs = inputs
        self.outdir = outdir
        self.artifacts = []

    def emit(self, name: str, text: str) -> Path:
        path = textio.write_text(self.outdir / name, text)
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        self.artifacts.append({"path": name, "sha256": digest})
        return path

    def finish(self):
        manifest = {
            "command": self.command,
            "inputs": self.inputs,
            "outdir": str(self.outdir),
            "artifacts": self.artifacts,
        }
        textio.write_text(
            self.outdir / f"manifest-{self.command}.json",
            json.dumps(manifest, indent=2, sort_keys=True) + "\n",
        )


def _load_scheme(path):
    return textio.parse_scheme(textio.read_text(path))


def _load_partition(path, n):
    return textio.parse_partition(textio.read_text(path), n)


def _outdir(args, fallback: Path) -> Path:
    return Path(args.outdir) if args.outdir else fallback


def cmd_gold(args) -> int:
    code = build_gold_code(args.m)
    rp = scheme_from_code(code)
    cert = verify_axioms(rp)
    run = Run("gold", [], Path(args.outdir))
    run.emit("codewords.txt", "".join(codeword_lines(code)))
    run.emit("scheme.asch", textio.format_scheme(rp))
    run.emit("cosets.part", textio.format_partition(rm_coset_partition(code)))
    run.finish()
    print(f"n={rp.n} d={rp.d}")
    print("weights: " + " ".join(f"{w}:{c}" for w, c in sorted(code.weight_counts.items())))
    print("valencies: " + " ".join(map(str, cert.k)))
    return 0


def cmd_verify(args) -> int:
    cert = verify_axioms(_load_scheme(args.scheme))
    print(f"points: {cert.n}")
    print(f"classes: {cert.d}")
    print("valencies: " + " ".join(map(str, cert.k)))
    return 0


def cmd_spectra(args) -> int:
    cert = verify_axioms(_load_scheme(args.scheme))
    spec = compute_spectrum(cert)
    print("P:")
    print(spec.P.to_text(), end="")
    print("Q:")
    print(spec.Q.to_text(), end="")
    print("valencies: " + " ".join(map(str, spec.k)))
    print("multiplicities: " + " ".join(map(str, spec.m)))
    report = verify_duality(spec)
    print("\n".join(report.lines()))
    if args.outdir:
        run = Run("spectra", [args.scheme], Path(args.outdir))
        run.emit("P.txt", spec.P.to_text())
        run.emit("Q.txt", spec.Q.to_text())
        run.finish()
    return 0 if report.ok else 1


def cmd_imprimitive(args) -> int:
    cert = verify_axioms(_load_scheme(args.scheme))
    for subset in find_closed_subsets(cert):
        size = sum(cert.k[i] for i in subset)
        print(f"CLOSED {','.join(map(str, subset))} blocks={cert.n // size} size={size}")
    return 0


def _parse_block(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--block expects comma-separated integers, got {text!r}") from None


def cmd_quotient(args) -> int:
    cert = verify_axioms(_load_scheme(args.scheme))
    qs = quotient_scheme(cert, _parse_block(args.block))
    text = textio.format_scheme(qs.quotient)
    print("classes: " + " ".join("{" + ",".join(map(str, c)) + "}" for c in qs.classes), file=sys.stderr)
    print("valencies: " + " ".join(map(str, qs.cert.k)), file=sys.stderr)
    if args.outdir:
        run = Run("quotient", [args.scheme], Path(args.outdir))
        run.emit("quotient.asch", text)
        run.finish()
    else:
        sys.stdout.write(text)
    return 0


def cmd_cover(args) -> int:
    cert = verify_axioms(_load_scheme(args.scheme))
    prof = recognize_cover(cert)
    print("arrangement: " + " ".join(map(str, prof.arrangement)))
    print(f"quotient: m={prof.m} r={prof.r} s={prof.s} n={prof.n}")
    print(f"cover: m3={prof.m3} m4={prof.m4} alpha3={prof.alpha3} alpha4={prof.alpha4} k={prof.k}")
    print("Q:")
    print(prof.spectrum.Q.to_text(), end="")
    ok = True
    for name, good in prof.identities().items():
        print(f"CHECK {name} {'OK' if good else 'FAIL'}")
        ok &= good
    template = prof.spectrum.Q == prof.template_Q()
    print(f"CHECK Q-template {'OK' if template else 'FAIL'}")
    report = antipodal_action(prof)
    print("\n".join(report.lines()))
    return 0 if ok and template and report.ok else 1


def cmd_clique_bound(args) -> int:
    cert = verify_axioms(_load_scheme(args.scheme))
    prof = recognize_cover(cert)
    theta, bound = delsarte_bound(prof.spectrum)
    print(f"theta={theta} bound={bound}")
    if args.partition:
        part = validate_spread(prof, _load_partition(args.partition, cert.n))
        print(f"SPREAD f={part.f} OK")
        for b in range(part.f):
            reg = verify_tight_regularity(prof, part.members(b))
            c1, c2, c3 = reg.constants
            status = "OK" if reg.paired_equal and reg.quotient_halving else "FAIL"
            print(f"REGULARITY block={b} c1={c1} c2={c2} c3={c3} {status}")
            if status == "FAIL":
                return 1
    return 0


def cmd_fission(args) -> int:
    cert = verify_axioms(_load_scheme(args.scheme))
    prof = recognize_cover(cert)
    part = validate_spread(prof, _load_partition(args.partition, cert.n))
    fs = fission(prof, part)
    run = Run("fission", [args.scheme, args.partition], _outdir(args, Path(args.scheme).parent))
    run.emit("fission.asch", textio.format_scheme(fs.refined))
    print(f"classes: {fs.cert5.d}")
    print("valencies: " + " ".join(map(str, fs.k)))
    print("multiplicities: " + " ".join(map(str, fs.m)))
    print("Q:")
    print(fs.spectrum5.Q.to_text(), end="")
    if args.report:
        text = fs.reconciliation.text()
        run.emit("reconciliation.txt", text)
        print(text, end="")
    run.finish()
    return 0


def cmd_muwm(args) -> int:
    rp5 = _load_scheme(args.scheme)
    blocks = _load_partition(args.partition, rp5.n)
    fs = recover_fission(rp5, blocks)
    bound = muwm_bound(fs)
    print("\n".join(bound.lines()))
    families = weighing_families(fs)
    if not families:
        print("no antipodal eigenspace matches the clique size")
        return 1
    run = Run("muwm", [args.scheme, args.partition], _outdir(args, Path(args.scheme).parent))
    for e, fam in families.items():
        print(f"FAMILY eigenindex={e} cliques={fam.f} size={fam.dim} weight={fam.weight} alpha={fam.alpha}")
        cert = verify_unbiased(fam)
        for a in range(fam.f):
            w = 1 if a == 0 else fam.weight
            run.emit(f"weighing/E{e}/W_a{a}_b0.txt", textio.format_weighing(fam.matrix(a, 0), a, 0, w))
        print(cert.line())
    run.finish()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="asch", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gold", help="generate the Gold-code scheme and its coset spread")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-o", dest="outdir", required=True)
    p.set_defaults(func=cmd_gold)

    for name, func, help_ in (
        ("verify", cmd_verify, "certify the scheme axioms"),
        ("spectra", cmd_spectra, "eigenmatrices P and Q"),
        ("imprimitive", cmd_imprimitive, "closed relation subsets"),
        ("cover-params", cmd_cover, "two-fold cover parameters"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("scheme")
        if name == "spectra":
            p.add_argument("-o", dest="outdir")
        p.set_defaults(func=func)

    p = sub.add_parser("quotient", help="quotient by a closed relation subset")
    p.add_argument("scheme")
    p.add_argument("--block", required=True)
    p.add_argument("-o", dest="outdir")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("clique-bound", help="clique bound and spread validation")
    p.add_argument("scheme")
    p.add_argument("--partition")
    p.set_defaults(func=cmd_clique_bound)

    p = sub.add_parser("fission", help="5-class fission along a spread")
    p.add_argument("scheme")
    p.add_argument("--partition", required=True)
    p.add_argument("--report", action="store_true")
    p.add_argument("-o", dest="outdir")
    p.set_defaults(func=cmd_fission)

    p = sub.add_parser("muwm", help="weighing matrices from a fission scheme")
    p.add_argument("scheme")
    p.add_argument("--partition", required=True)
    p.add_argument("-o", dest="outdir")
    p.set_defaults(func=cmd_muwm)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CheckFailed as exc:
        print(f"FAILED: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except (UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
