"""Handlers for the non-pipeline subcommands.

Every handler takes the parsed arguments and the active field and returns a
:class:`CommandResult`; ``main`` owns the output format and exit codes.
"""

from argparse import Namespace
from dataclasses import dataclass, field
import logging
from math import comb
from pathlib import Path
from typing import Any

from pydantic import TypeAdapter

from ipslab.algebra.fields import Field, PrimeField, create_field
from ipslab.algebra.monomials import MonomialOrder, VarPartition, VarTable
from ipslab.algebra.polynomials import SparsePoly
from ipslab.algebra.serialization import load_poly, poly_to_dict, poly_to_model
from ipslab.errors import InvalidParameterError, UsageError
from ipslab.hypercube import boolean_inverse, coeff_on_support, is_unsat_on_cube
from ipslab.instances import (
    Instance,
    create_instance,
    elementary_symmetric,
    gen_subset_sum,
    list_valid_constdeg,
    valid_blockwise_sizes,
)
from ipslab.measures import (
    balanced_frequency,
    degree_experiment,
    eval_dim_lower_bound,
    kalorkoti_bound,
    pd_matrix,
    rank_exact,
    rank_over_function_field,
)
from ipslab.refute import (
    LinRefutation,
    build_subset_sum_refutation,
    create_verifier,
    elem_sym_inverse_structure,
    functional_check_mult_ips,
    lift_sparse_refutation,
)
from ipslab.roabp import (
    elem_sym_roabp,
    load_sum,
    multilinearize_sum_with_witnesses,
    subset_sum_inverse_roabp,
    width_lower_bound,
)
from ipslab.roabp.model import SumRoabp
from ipslab.roabp.serialization import dump_sum, sum_to_model
from ipslab.schemas.certificate import CertificateModel, VerificationReport
from ipslab.utils.report_csv import CsvRow

logger = logging.getLogger(__name__)

_BLOCKS = TypeAdapter(list[list[str]])


@dataclass(frozen=True)
class CommandResult:
    """JSON payload, CSV rows and whether every verification passed."""

    payload: dict[str, Any]
    rows: list[CsvRow] = field(default_factory=list)
    ok: bool = True


# ============================================================================
# Argument helpers
# ============================================================================


def parse_names(table: VarTable, text: str | None) -> list[int]:
    """Comma-separated variable names to ids; empty or None gives no variables."""
    if not text:
        return []
    return table.ids(name.strip() for name in text.split(",") if name.strip())


def parse_blocks(table: VarTable, text: str) -> VarPartition:
    """``"x1,x2;y0,y1"`` or a JSON file of name lists to a partition.

    Blocks are labelled X1, X2, ... in order.
    """
    path = Path(text)
    if path.suffix == ".json":
        names = _BLOCKS.validate_json(path.read_text())
        return VarPartition.of([table.ids(block) for block in names])
    blocks = [parse_names(table, part) for part in text.split(";") if part.strip()]
    return VarPartition.of(blocks)


def over_prime(args: Namespace) -> int | None:
    """The modulus named by ``--over Fp:<p>``, else ``--prime``."""
    over = getattr(args, "over", None)
    if not over:
        return args.prime
    modular = create_field(over)
    if not isinstance(modular, PrimeField):
        raise UsageError(f"--over takes a prime field Fp:<p>, got {over!r}")
    if args.prime is not None and args.prime != modular.p:
        raise UsageError(f"--over {over} disagrees with --prime {args.prime}")
    return modular.p


def load_instance(args: Namespace, fd: Field) -> tuple[SparsePoly, Instance | None]:
    """The axiom named by ``--input`` or generated from ``--family``/``--n``.

    Raises:
        UsageError: If neither source is given.
    """
    if getattr(args, "input", None):
        return load_poly(Path(args.input)), None
    if not getattr(args, "family", None) or args.n is None:
        raise UsageError("Pass --input FILE or --family NAME with --n")
    instance = create_instance(
        args.family,
        fd,
        n=args.n,
        c=args.c,
        d=args.d,
        beta=args.beta,
        seed=args.instance_seed,
        rule=args.rule,
        inclusive=not args.exclusive,
    )
    return instance.require_axiom(), instance


def _target(args: Namespace, f: SparsePoly) -> SparsePoly:
    """The polynomial a measure runs on: the axiom or its cube inverse."""
    if getattr(args, "of", "axiom") == "inverse":
        return boolean_inverse(f, max_vars=args.guard_vars).g
    return f


def _family(args: Namespace, instance: Instance | None) -> str:
    return instance.descriptor.family if instance else Path(args.input).stem


def _size(instance: Instance | None, f: SparsePoly) -> int:
    if instance is not None:
        return int(instance.descriptor.params.get("n", len(f.variables)))
    return len(f.variables)


# ============================================================================
# gen / inverse / coeff / instances
# ============================================================================


def cmd_gen(args: Namespace, fd: Field) -> CommandResult:
    if getattr(args, "list_valid", False):
        if args.family not in ("blockwise", "smconst"):
            raise UsageError(
                "--list-valid needs --family blockwise or --family smconst"
            )
        return cmd_list_valid(args, fd)
    instance = create_instance(
        args.family,
        fd,
        n=args.n,
        c=args.c,
        d=args.d,
        beta=args.beta,
        seed=args.instance_seed,
        rule=args.rule,
        inclusive=not args.exclusive,
    )
    descriptor = instance.descriptor
    axiom = instance.axiom
    payload = {
        "instance": descriptor.to_model().model_dump(),
        "axiom": poly_to_dict(axiom) if axiom is not None else None,
    }
    spec = descriptor.field.spec
    rows = [
        CsvRow(
            args.family, args.n, spec, args.seed, "variables", len(descriptor.variables)
        )
    ]
    if axiom is not None:
        rows.append(CsvRow(args.family, args.n, spec, args.seed, "terms", len(axiom)))
    return CommandResult(payload, rows)


def cmd_inverse(args: Namespace, fd: Field) -> CommandResult:
    f, instance = load_instance(args, fd)
    check = is_unsat_on_cube(f, max_vars=args.guard_vars)
    if not check:
        logger.error("Axiom vanishes at %r", check.witness)
        return CommandResult({"unsat": False, "witness": check.witness}, ok=False)
    inverse = boolean_inverse(f, max_vars=args.guard_vars)
    names = f.variables.name
    payload = {
        "unsat": True,
        "cube_vars": [names(v) for v in inverse.cube_vars],
        "g": poly_to_dict(inverse.g),
    }
    family, n, spec = _family(args, instance), _size(instance, f), f.field.spec
    rows = [
        CsvRow(family, n, spec, args.seed, "cube_points", check.points),
        CsvRow(family, n, spec, args.seed, "inverse_terms", len(inverse.g)),
        CsvRow(family, n, spec, args.seed, "inverse_degree", inverse.g.degree()),
    ]
    return CommandResult(payload, rows)


def cmd_coeff(args: Namespace, fd: Field) -> CommandResult:
    f, instance = load_instance(args, fd)
    m = f.variables.parse_monomial(args.monomial)
    if m.multilinearize() != m:
        raise InvalidParameterError(f"Monomial {args.monomial!r} is not multilinear")
    value = coeff_on_support(f, sorted(m.support))
    text = f.field.format(value)
    payload = {"monomial": f.variables.format_monomial(m), "coefficient": text}
    row = CsvRow(
        _family(args, instance), _size(instance, f), f.field.spec, args.seed,
        f"coeff[{f.variables.format_monomial(m)}]", text,
    )
    return CommandResult(payload, [row])


def cmd_list_valid(args: Namespace, fd: Field) -> CommandResult:
    if args.family == "blockwise":
        sizes: list[Any] = valid_blockwise_sizes(args.max_n)
        rows = [CsvRow("blockwise", n, fd.spec, None, "valid", True) for n in sizes]
    else:
        sizes = [list(pair) for pair in list_valid_constdeg(args.max_n)]
        rows = [
            CsvRow("smconst", n, fd.spec, None, f"valid[c={c}]", True) for n, c in sizes
        ]
    return CommandResult({"family": args.family, "valid": sizes}, rows)


# ============================================================================
# measure / rank
# ============================================================================


def cmd_measure_kalorkoti(args: Namespace, fd: Field) -> CommandResult:
    f, instance = load_instance(args, fd)
    if args.blocks:
        partition = parse_blocks(f.variables, args.blocks)
    elif instance is not None and instance.partition is not None:
        partition = instance.partition
    else:
        raise UsageError("Pass --blocks for a polynomial read from a file")
    target = _target(args, f)
    order = MonomialOrder.from_prefixes(f.variables, args.order)
    report = kalorkoti_bound(target, partition, order)
    family, n, spec = _family(args, instance), _size(instance, f), fd.spec
    rows = [
        CsvRow(family, n, spec, args.seed, f"alg_rank_tm[{b.label}]", b.bound)
        for b in report.blocks
    ]
    rows.append(CsvRow(family, n, spec, args.seed, "kalorkoti_sum", report.total))
    return CommandResult(report.model_dump(), rows)


def cmd_measure_evaldim(args: Namespace, fd: Field) -> CommandResult:
    f, instance = load_instance(args, fd)
    target = _target(args, f)
    xs = parse_names(f.variables, args.x)
    ys = parse_names(f.variables, args.y)
    sample_set = [f.field.parse(s.strip()) for s in args.sample_set.split(",")]
    dim = eval_dim_lower_bound(
        target, xs, ys, sample_set, samples=args.samples, seed=args.seed
    )
    payload = {"x": args.x, "y": args.y, "sample_set": args.sample_set, "eval_dim": dim}
    row = CsvRow(
        _family(args, instance), _size(instance, f), fd.spec, args.seed, "eval_dim", dim
    )
    return CommandResult(payload, [row])


def cmd_measure_degree(args: Namespace, fd: Field) -> CommandResult:
    report = degree_experiment(
        args.n, fd, args.sample_size, args.trials or 100, args.seed
    )
    row = CsvRow(
        "subset", args.n, fd.spec, args.seed, "degree_failure_rate",
        report.frequency, report.bound, report.satisfied,
    )
    return CommandResult(report.model_dump(), [row])


def cmd_measure_balanced(args: Namespace, fd: Field) -> CommandResult:
    report = balanced_frequency(args.n, args.samples, args.seed)
    row = CsvRow(
        "partition", args.n, fd.spec, args.seed, "balanced_frequency",
        report.frequency, report.expected, report.within,
    )
    return CommandResult(report.model_dump(), [row])


def cmd_rank_pd(args: Namespace, fd: Field) -> CommandResult:
    f, instance = load_instance(args, fd)
    target = _target(args, f)
    ys = parse_names(f.variables, args.y)
    zs = parse_names(f.variables, args.z)
    ts = parse_names(f.variables, args.t)
    family, n = _family(args, instance), _size(instance, f)
    if ts:
        result = rank_over_function_field(
            target,
            ys,
            zs,
            ts,
            trials=args.trials,
            prime=over_prime(args),
            seed=args.seed,
        )
        payload = result.model_dump()
        rank = result.rank
    else:
        matrix = pd_matrix(target, ys, zs)
        rank = rank_exact(matrix)
        payload = {"rank": rank, "shape": list(matrix.logical_shape)}
    row = CsvRow(family, n, fd.spec, args.seed, "pd_rank", rank)
    return CommandResult(payload, [row])


# ============================================================================
# roabp
# ============================================================================


def cmd_roabp_multilinearize(args: Namespace, fd: Field) -> CommandResult:
    a = load_sum(Path(args.input))
    result = multilinearize_sum_with_witnesses(a, max_vars=args.guard_vars)
    if args.write:
        dump_sum(result.roabp, Path(args.write))
    payload = {
        "roabp": sum_to_model(result.roabp).model_dump(exclude_none=True),
        "witness_terms": {
            a.variables.name(v): len(h)
            for v, h in result.witnesses.items()
            if not h.is_zero()
        },
        "identity_checked": True,
    }
    row = CsvRow(
        "roabp", len(a.variables), a.field.spec, args.seed, "total_width", a.total_width
    )
    return CommandResult(payload, [row])


def cmd_roabp_width(args: Namespace, fd: Field) -> CommandResult:
    a = load_sum(Path(args.input))
    members = []
    rows = []
    ok = True
    for i, member in enumerate(a.members):
        f = member.multilinearize().extract(max_vars=args.guard_vars)
        bound = width_lower_bound(f, member.order, max_vars=args.guard_vars)
        ok &= bound <= member.width
        members.append({"member": i, "width": member.width, "width_lower_bound": bound})
        rows.append(
            CsvRow(
                "roabp", member.n, a.field.spec, args.seed, f"width_lower_bound[{i}]",
                bound, member.width, bound <= member.width,
            )
        )
    return CommandResult({"members": members}, rows, ok=ok)


def cmd_roabp_construct(args: Namespace, fd: Field) -> CommandResult:
    """Build an explicit ROABP and check its extraction against its polynomial."""
    if args.kind == "esym":
        a = elem_sym_roabp(args.n, args.d, fd)
        expected = elementary_symmetric(fd, a.variables, range(args.n), args.d)
    else:
        beta = fd.parse(args.beta) if args.beta else fd.from_int(args.n + 1)
        a = subset_sum_inverse_roabp(args.n, beta, fd)
        axiom = gen_subset_sum(args.n, beta, fd).require_axiom()
        expected = boolean_inverse(axiom, max_vars=args.guard_vars).g
    matches = a.extract() == expected
    if args.write:
        dump_sum(SumRoabp((a,)), Path(args.write))
    payload = {
        "kind": args.kind,
        "width": a.width,
        "matches": matches,
        "roabp": sum_to_model(SumRoabp((a,))).model_dump(exclude_none=True),
    }
    row = CsvRow(
        "roabp",
        args.n,
        fd.spec,
        args.seed,
        f"{args.kind}_width",
        a.width,
        None,
        matches,
    )
    return CommandResult(payload, [row], ok=matches)


# ============================================================================
# refute
# ============================================================================


def _write_certificate(refutation: LinRefutation, path: str | None) -> dict[str, Any]:
    model = refutation.to_model()
    if path:
        Path(path).write_text(model.model_dump_json(indent=2, exclude_none=True) + "\n")
    return model.model_dump(exclude_none=True)


def _load_certificate(path: str) -> LinRefutation:
    model = CertificateModel.model_validate_json(Path(path).read_text())
    return LinRefutation.from_model(model)


def cmd_refute_build(args: Namespace, fd: Field) -> CommandResult:
    beta = args.beta if args.beta is not None else args.n + 1
    refutation = build_subset_sum_refutation(args.n, beta, fd)
    payload = {"certificate": _write_certificate(refutation, args.write)}
    row = CsvRow("subset", args.n, fd.spec, args.seed, "g_terms", len(refutation.g))
    return CommandResult(payload, [row])


def cmd_refute_lift(args: Namespace, fd: Field) -> CommandResult:
    f, instance = load_instance(args, fd)
    refutation = lift_sparse_refutation(f, fd)
    payload = {"certificate": _write_certificate(refutation, args.write)}
    row = CsvRow(
        _family(args, instance), _size(instance, f), fd.spec, args.seed, "g_terms",
        len(refutation.g),
    )
    return CommandResult(payload, [row])


def cmd_refute_verify(args: Namespace, fd: Field) -> CommandResult:
    refutation = _load_certificate(args.cert)
    if args.mode == "exact":
        verifier = create_verifier("exact")
    else:
        verifier = create_verifier(
            "randomized", trials=args.trials, prime=args.prime, seed=args.seed
        )
    verdict = verifier.verify(refutation)
    report = VerificationReport(
        ok=verdict.ok,
        mode=verdict.mode,
        residual=None if verdict.residual is None else poly_to_model(verdict.residual),
        trials=verdict.trials,
        prime=verdict.prime,
        failed_trial=verdict.failed_trial,
    )
    if not verdict:
        terms = 0 if verdict.residual is None else len(verdict.residual)
        logger.error("Certificate does not verify (residual has %d terms)", terms)
    row = CsvRow(
        "certificate",
        len(refutation.axiom.variables),
        refutation.field.spec,
        args.seed,
        f"verify[{verdict.mode}]",
        verdict.ok,
        None,
        verdict.ok,
    )
    return CommandResult(report.model_dump(exclude_none=True), [row], ok=verdict.ok)


def cmd_refute_functional(args: Namespace, fd: Field) -> CommandResult:
    refutation = _load_certificate(args.cert)
    report = functional_check_mult_ips(refutation, max_vars=args.guard_vars)
    ok = report.verified and report.cube_agrees
    row = CsvRow(
        "certificate",
        len(refutation.axiom.variables),
        refutation.field.spec,
        args.seed,
        "cube_agrees",
        report.cube_agrees,
        None,
        ok,
    )
    return CommandResult(report.model_dump(), [row], ok=ok)


def cmd_refute_elem_sym(args: Namespace, fd: Field) -> CommandResult:
    beta = args.beta if args.beta is not None else comb(args.n, args.d) + 1
    report = elem_sym_inverse_structure(args.n, args.d, beta, fd)
    row = CsvRow(
        "esym", args.n, fd.spec, args.seed, f"pattern[d={args.d}]",
        report.pattern_ok, None, report.pattern_ok,
    )
    return CommandResult(report.model_dump(), [row])
