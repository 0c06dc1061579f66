"""Command-line front door.

Instance files are TOML with up to four sections::

    [system]                 # affine-linear map, one row per form
    matrix = [[1], [1]]
    constant = [0, 2]

    [lattice]                # generators as row-listed vectors
    ambient_dim = 2
    generators = [[1, 1]]
    base = [0, 2]            # optional translate

    [sublattice]             # for `preimage`: target inside the image
    ambient_dim = 2
    generators = [[2, 2]]

    [body]                   # for `verify`
    kind = "box"             # or "simplex"
    box = [[1, "N"], [1, "N"]]

Scalar entries may be strings in the scale variable N (e.g. "N", "N-1",
"2*N"), resolved by the --N flag.

Exit codes: 0 ok, 2 malformed file, 3 undefined series, 4 infinite index,
5 empty body.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from .exactmath import INFINITY, IntMatrix, NoLatticeError, hnf
from .forms import LinearSystem, complexity
from .harness import (
    ConvexBody,
    EmptyBodyError,
    convergence_sweep,
    dickson_average_lattice,
    dickson_average_system,
    reports_to_tsv,
)
from .lattice import (
    AffineLattice,
    InfiniteIndexError,
    NotASublatticeError,
    complexity_preserving_map,
    from_generators,
    from_matrix_image,
    index,
    preimage,
)
from .localfactors import (
    SeriesUndefinedError,
    alpha_p,
    find_obstructions,
    gamma_p,
    singular_series,
)

EXIT_PARSE = 2
EXIT_SERIES = 3
EXIT_INDEX = 4
EXIT_EMPTY = 5


class InstanceError(Exception):
    pass


def _eval_scalar(value, N):
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        if N is None and "N" in value:
            raise InstanceError("instance uses the scale variable N; pass --N")
        try:
            out = eval(value, {"__builtins__": {}}, {"N": N})  # arithmetic only
        except Exception as e:
            raise InstanceError(f"bad scalar expression {value!r}: {e}")
        if not isinstance(out, int):
            raise InstanceError(f"scalar expression {value!r} is not an integer")
        return out
    raise InstanceError(f"integer or expression string expected, got {value!r}")


def _int_rows(raw, N):
    if not isinstance(raw, list) or not raw or not all(isinstance(r, list) for r in raw):
        raise InstanceError("matrix must be a nonempty list of rows")
    return [[_eval_scalar(x, N) for x in row] for row in raw]


class Instance:
    """Parsed instance file.  Sections needing an unset scale variable are
    deferred: the error surfaces only when a command asks for them."""

    def __init__(self, data: dict, N: int | None):
        self._sections: dict[str, object] = {}
        self._errors: dict[str, str] = {}
        for key, builder in (
            ("system", self._build_system),
            ("lattice", self._build_lattice),
            ("sublattice", self._build_sublattice),
            ("body", self._build_body),
        ):
            if key in data:
                try:
                    self._sections[key] = builder(data[key], N)
                except InstanceError as e:
                    self._errors[key] = str(e)
        if "system" not in data and "lattice" not in data:
            raise InstanceError("instance needs a [system] or a [lattice] section")

    def _get(self, key: str):
        if key in self._errors:
            raise InstanceError(f"[{key}] section: {self._errors[key]}")
        return self._sections.get(key)

    @property
    def system(self):
        return self._get("system")

    @property
    def lattice(self):
        return self._get("lattice")

    @property
    def sublattice(self):
        return self._get("sublattice")

    @property
    def body(self):
        return self._get("body")

    @staticmethod
    def _build_system(sec, N):
        rows = _int_rows(sec["matrix"], N)
        const = [_eval_scalar(x, N) for x in sec.get("constant", [0] * len(rows))]
        return LinearSystem.from_rows(rows, const)

    @staticmethod
    def _build_sublattice(sec, N):
        gens = _int_rows(sec["generators"], N)
        return from_generators(sec.get("ambient_dim", len(gens[0])), gens)

    @staticmethod
    def _build_lattice(sec, N):
        gens = _int_rows(sec["generators"], N)
        dim = sec.get("ambient_dim", len(gens[0]))
        base = [_eval_scalar(x, N) for x in sec.get("base", [0] * dim)]
        return AffineLattice(tuple(base), from_generators(dim, gens))

    @staticmethod
    def _build_body(sec, N):
        kind = sec.get("kind", "box")
        if kind == "box":
            box = [(_eval_scalar(a, N), _eval_scalar(b, N)) for a, b in sec["box"]]
            hs = []
            for h in sec.get("halfspaces", []):
                coeffs = [Fraction(str(c)) for c in h["coeffs"]]
                b = Fraction(_eval_scalar(h["b"], N))
                hs.append((coeffs, b))
            return (
                ConvexBody.with_halfspaces(box, hs) if hs else ConvexBody.from_box(box)
            )
        if kind == "simplex":
            return ConvexBody.simplex(
                sec["dim"], _eval_scalar(sec["total"], N), sec.get("low", 1)
            )
        raise InstanceError(f"unknown body kind {kind!r}")


def _load(path: str, N: int | None) -> Instance:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
        return Instance(data, N)
    except (OSError, tomllib.TOMLDecodeError, InstanceError, NoLatticeError,
            KeyError, TypeError, ValueError) as e:
        print(f"error: cannot parse instance: {e}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def _render_inf(v) -> str:
    return "infinity" if v == INFINITY else str(int(v))


def _emit(payload: dict, fmt: str, text: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_complexity(args) -> int:
    inst = _load(args.file, args.N)
    if inst.system is None:
        print("error: complexity needs a [system] section", file=sys.stderr)
        return EXIT_PARSE
    rep = complexity(inst.system)
    lines = []
    for i, (v, w) in enumerate(zip(rep.per_index, rep.witness_partitions), start=1):
        line = f"i={i}: {_render_inf(v)}"
        if w is not None:
            parts = " | ".join(
                "{" + ",".join(str(j + 1) for j in sorted(cls)) + "}" for cls in w
            )
            line += f"  partition: {parts}"
        lines.append(line)
    lines.append(f"overall: {_render_inf(rep.overall)}")
    _emit(
        {
            "per_index": [_render_inf(v) for v in rep.per_index],
            "overall": _render_inf(rep.overall),
        },
        args.format, "\n".join(lines),
    )
    return 0


def _need_lattice(inst) -> AffineLattice:
    if inst.lattice is None:
        print("error: this command needs a [lattice] section", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)
    return inst.lattice


def cmd_alpha(args) -> int:
    inst = _load(args.file, args.N)
    laff = _need_lattice(inst)
    try:
        if args.prime is not None:
            rep = alpha_p(laff, args.prime)
            _emit(
                {"p": rep.p, "alpha": _frac(rep.alpha), "unit_count": rep.unit_count,
                 "size": rep.size},
                args.format,
                f"alpha_{rep.p} = {_frac(rep.alpha)}  (units {rep.unit_count} of {rep.size})",
            )
        else:
            return _series(laff, args)
    except SeriesUndefinedError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SERIES
    return 0


def _series(laff, args) -> int:
    rep = singular_series(laff, args.cutoff)
    text = [f"cutoff: {rep.cutoff}", f"product: {rep.partial_product}"]
    if rep.obstructions:
        text.insert(0, "obstructions: " + " ".join(str(p) for p in rep.obstructions))
        text[-1] = "product: 0"
    text.append(rep.tail_note)
    _emit(
        {
            "cutoff": rep.cutoff,
            "product": str(rep.partial_product),
            "obstructions": list(rep.obstructions),
            "head_factors": {str(f.p): _frac(f.alpha) for f in rep.exact_factors[:10]},
        },
        args.format, "\n".join(text),
    )
    return 0


def cmd_series(args) -> int:
    inst = _load(args.file, args.N)
    laff = _need_lattice(inst)
    try:
        return _series(laff, args)
    except SeriesUndefinedError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SERIES


def cmd_gamma(args) -> int:
    inst = _load(args.file, args.N)
    if inst.system is None:
        print("error: gamma needs a [system] section", file=sys.stderr)
        return EXIT_PARSE
    g = gamma_p(inst.system, args.prime)
    _emit({"p": args.prime, "gamma": _frac(g)}, args.format,
          f"gamma_{args.prime} = {_frac(g)}")
    return 0


def cmd_obstructions(args) -> int:
    inst = _load(args.file, args.N)
    laff = _need_lattice(inst)
    try:
        obs = find_obstructions(laff, bound=args.bound)
    except SeriesUndefinedError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SERIES
    _emit({"obstructions": obs}, args.format,
          "obstructions: " + (" ".join(map(str, obs)) if obs else "none"))
    return 0


def cmd_preimage(args) -> int:
    inst = _load(args.file, args.N)
    if inst.system is None or inst.sublattice is None:
        print("error: preimage needs [system] and [sublattice] sections", file=sys.stderr)
        return EXIT_PARSE
    try:
        T = complexity_preserving_map(inst.system.matrix, inst.sublattice)
    except (InfiniteIndexError, NotASublatticeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INDEX
    image = from_matrix_image(inst.system.matrix)
    idx = index(inst.sublattice, image)
    lines = ["T columns:"]
    for j in range(T.cols):
        lines.append("  (" + ", ".join(str(x) for x in T.column(j)) + ")")
    lines.append(f"|det T| = {abs(T.det())}")
    lines.append(f"index [image : sublattice] = {_render_inf(idx)}")
    _emit(
        {"T": [list(r) for r in T.entries], "abs_det": abs(T.det()),
         "index": _render_inf(idx)},
        args.format, "\n".join(lines),
    )
    return 0


def cmd_hnf(args) -> int:
    inst = _load(args.file, args.N)
    if inst.lattice is not None:
        M = IntMatrix.from_columns(inst.lattice.lattice.generators.columns())
    elif inst.system is not None:
        M = inst.system.matrix
    else:
        return EXIT_PARSE
    H, U = hnf(M)
    _emit(
        {"H": [list(r) for r in H.entries], "U": [list(r) for r in U.entries]},
        args.format, f"H =\n{H}\nU =\n{U}",
    )
    return 0


def _verify_once(inst, N, args):
    body = inst.body
    if body is None:
        raise InstanceError("verify needs a [body] section")
    if inst.system is not None:
        return dickson_average_system(
            inst.system, body, cutoff=args.cutoff, chunk=args.chunk,
            description=args.file, scale=N or 0,
        )
    return dickson_average_lattice(
        inst.lattice, body, cutoff=args.cutoff, chunk=args.chunk,
        description=args.file, scale=N or 0,
    )


def cmd_verify(args) -> int:
    try:
        if args.sweep:
            scales = sorted(int(float(s)) for s in args.sweep.split(","))
            reports = convergence_sweep(
                lambda N: _verify_once(_load(args.file, N), N, args), scales
            )
            sys.stdout.write(reports_to_tsv(reports))
        else:
            inst = _load(args.file, args.N)
            rep = _verify_once(inst, args.N, args)
            if args.format == "tsv":
                sys.stdout.write(reports_to_tsv([rep]))
            else:
                _emit(
                    {
                        "point_count": rep.point_count,
                        "empirical": rep.empirical_mean,
                        "predicted": rep.predicted,
                        "rel_error": rep.relative_error,
                        "cutoff": rep.cutoff,
                        "prime_points": rep.prime_point_count,
                    },
                    args.format, rep.line(),
                )
    except EmptyBodyError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_EMPTY
    except SeriesUndefinedError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SERIES
    except InstanceError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="primelattice",
        description="exact lattice/linear-form computations and desk-scale "
        "verification of prime-constellation predictions",
    )
    ap.add_argument("--seed", type=int, default=0,
                    help="seed for randomized self-checks (reserved)")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="TOML instance file")
        p.add_argument("--N", type=int, default=None, help="scale substituted for N")
        p.add_argument("--format", choices=("text", "tsv", "json"), default="text")

    p = sub.add_parser("complexity", help="complexity invariant of the system")
    common(p)
    p.set_defaults(func=cmd_complexity)

    p = sub.add_parser("alpha", help="local factor at one prime, or series with --cutoff")
    common(p)
    p.add_argument("--prime", type=int)
    p.add_argument("--cutoff", type=int, default=10 ** 4)
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("gamma", help="local average of the system at one prime")
    common(p)
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(func=cmd_gamma)

    p = sub.add_parser("series", help="truncated singular series")
    common(p)
    p.add_argument("--cutoff", type=int, default=10 ** 4)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("obstructions", help="complete list of obstructed primes")
    common(p)
    p.add_argument("--bound", type=int, default=None,
                   help="additionally test every prime up to this bound")
    p.set_defaults(func=cmd_obstructions)

    p = sub.add_parser("preimage", help="finite-index preimage map T")
    common(p)
    p.set_defaults(func=cmd_preimage)

    p = sub.add_parser("hnf", help="column Hermite normal form and transform")
    common(p)
    p.set_defaults(func=cmd_hnf)

    p = sub.add_parser("verify", help="empirical average vs truncated series")
    common(p)
    p.add_argument("--cutoff", type=int, default=10 ** 4)
    p.add_argument("--sweep", help="comma-separated ascending N values; emits TSV")
    p.add_argument("--chunk", type=int, default=1 << 16)
    p.set_defaults(func=cmd_verify)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InstanceError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
