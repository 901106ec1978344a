"""
Enumeration of both eigenvalue sequences.

Every branch is anchored at p = 2, where the dense oracle gives the complete
spectrum of the discrete problem, refined there by the shooting engine and
then followed in p. The negative sequence is the positive sequence of ``-m``
with the sign of the eigenvalues flipped.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import numpy as np

import compas_pbiharmonic
from compas_pbiharmonic.base import SpectralData
from compas_pbiharmonic.errors import BranchJumpError
from compas_pbiharmonic.errors import IntegrationOverflowError
from compas_pbiharmonic.errors import NoConvergenceError
from compas_pbiharmonic.errors import NonAlternatingError
from compas_pbiharmonic.errors import NotAdmissibleError
from compas_pbiharmonic.errors import SingularJacobianError
from compas_pbiharmonic.errors import StepUnderflowError
from compas_pbiharmonic.errors import error_code
from compas_pbiharmonic.model import Exponent
from compas_pbiharmonic.model import negate_weight
from compas_pbiharmonic.model import phi_p
from compas_pbiharmonic.postprocess import Check
from compas_pbiharmonic.postprocess import VerifyReport
from compas_pbiharmonic.postprocess import equi_eigenvalue_partition_check
from compas_pbiharmonic.postprocess import measure_bound_check
from compas_pbiharmonic.postprocess import nodal_decompose
from compas_pbiharmonic.postprocess import weight_admissible_on_domains
from compas_pbiharmonic.results import SpectrumTable
from compas_pbiharmonic.results import SweepTable
from compas_pbiharmonic.solvers import DiscreteProblem
from compas_pbiharmonic.solvers import classify_zeros
from compas_pbiharmonic.solvers import continue_in_p
from compas_pbiharmonic.solvers import mu1_curve
from compas_pbiharmonic.solvers import newton_solve
from compas_pbiharmonic.solvers import oracle_p2
from compas_pbiharmonic.solvers import retrace
from compas_pbiharmonic.utilities import log
from compas_pbiharmonic.utilities import timer

SOLVE_ERRORS = (NoConvergenceError, SingularJacobianError, IntegrationOverflowError, StepUnderflowError, BranchJumpError)

RESIDUAL_TOL = 1e-7
SIMPLICITY_TOL = 1e-8
DUALITY_TOL = 1e-6
JUMP_THRESHOLD = 0.05
ISOLATION_DELTA = 0.05
MU1_TOL = 1e-3
CONCAVITY_SLACK = 1e-6
ANCHOR_TRIES = 3


class Branch(SpectralData):
    """The pairs of one sign, with the status of every slot.

    Parameters
    ----------
    sign : str
        ``"+"`` or ``"-"``.
    pairs : list[:class:`compas_pbiharmonic.results.Eigenpair`]
    status : str, optional
        Why the branch is empty, e.g. ``"NotAdmissible"``.
    slots : dict, optional
        ``{"+1": "ok", "+2": "NoConvergence", ...}``.

    """

    def __init__(self, sign, pairs=None, status=None, slots=None, **kwargs):
        super(Branch, self).__init__(**kwargs)
        self.sign = sign
        self.pairs = list(pairs or [])
        self.status = status
        self.slots = dict(slots or {})

    @property
    def __data__(self):
        return {"sign": self.sign, "pairs": [p.__data__ for p in self.pairs], "status": self.status, "slots": self.slots}

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __getitem__(self, index):
        return self.pairs[index]


# ==============================================================================
# anchors and branches
# ==============================================================================


def seed_beta(values, h, e):
    """``v'(0)`` for ``u'(0) = 1`` estimated from the first node of a grid eigenvector."""
    d2 = (values[1] - 2.0 * values[0]) / (h * h)
    return phi_p(h * d2 / values[0], e) / h


def _candidates(oracle, k, tries=ANCHOR_TRIES):
    """Oracle entries to seed slot ``k``: those with ``k - 1`` sign changes first, then by closeness."""
    changes = [vector.sign_changes() for _, vector in oracle]
    order = sorted(range(len(oracle)), key=lambda i: (abs(changes[i] - (k - 1)), i))
    return [oracle[i] for i in order[:tries]]


def _oracle_anchors(problem, kmax, weight, sign):
    e = Exponent(2.0)
    prob = DiscreteProblem(problem.grid_n, weight, e)
    plus, minus = oracle_p2(prob)
    oracle = plus if sign == "+" else minus
    anchors = {}
    for k in range(1, kmax + 1):
        if not oracle:
            anchors[k] = NoConvergenceError("The oracle returned no eigenvalues of sign {}.".format(sign))
            continue
        anchors[k] = BranchJumpError("No oracle seed converged to a pair with {} zeros.".format(k - 1), last_p=2.0)
        for lam0, vector in _candidates(oracle, k):
            try:
                pair = newton_solve(lam0, seed_beta(vector.values, prob.h, e), weight, e, problem.shooting, problem.resample_n)
            except SOLVE_ERRORS as error:
                anchors[k] = error
                continue
            if pair.k == k:
                log("anchor {}{} lam={!r} (oracle {!r})", sign, k, pair.lam, lam0)
                anchors[k] = pair
                break
            log("oracle seed {!r} for {}{} converged to {} zeros", lam0, sign, k, pair.k - 1)
    return anchors


@timer(message="p=2 anchors computed in")
def anchor_pairs(problem, kmax, weight=None):
    """Shooting pairs at p = 2 seeded by the dense oracle.

    Slot ``k`` is seeded by the oracle eigenvectors with ``k - 1`` sign
    changes, whatever the position of their eigenvalues. The ordering of
    the anchored eigenvalues is checked by :func:`build_verify_report`.

    Parameters
    ----------
    problem : :class:`compas_pbiharmonic.model.ProblemSpec`
    kmax : int
    weight : :class:`compas_pbiharmonic.model.weights._Weight`, optional
        By default the weight of the problem.

    Returns
    -------
    dict
        ``{k: Eigenpair or Exception}``.

    """
    return _oracle_anchors(problem, kmax, weight or problem.weight, "+")


def positive_branch(problem, kmax, weight=None, sign="+"):
    """Positive eigenpairs ``k = 1..kmax`` of ``weight`` at the exponent of the problem.

    Returns
    -------
    :class:`Branch`

    """
    weight = weight or problem.weight
    anchors = anchor_pairs(problem, kmax, weight)
    branch = Branch(sign)
    for k in range(1, kmax + 1):
        slot = "{}{}".format(sign, k)
        anchor = anchors[k]
        if isinstance(anchor, Exception):
            branch.slots[slot] = error_code(anchor)
            continue
        try:
            pair = continue_in_p(anchor, problem.p, weight, problem.shooting, problem.continuation_step, problem.resample_n)
        except SOLVE_ERRORS as error:
            branch.slots[slot] = error_code(error)
            continue
        branch.slots[slot] = "ok"
        branch.pairs.append(pair)
    return branch


def negative_branch(problem, kmax, direct_check=False):
    """Negative eigenpairs from the positive branch of ``-m``.

    Parameters
    ----------
    problem : :class:`compas_pbiharmonic.model.ProblemSpec`
    kmax : int
    direct_check : bool, optional
        Re-derive every eigenvalue by shooting with negative ``lam`` on ``m``,
        seeded by the negative oracle pairs of ``m`` and continued in p, and
        store the relative deviation on the pair.

    Returns
    -------
    :class:`Branch`
        Empty with status ``"NotAdmissible"`` when ``m >= 0``.

    """
    try:
        negated = negate_weight(problem.weight)
    except NotAdmissibleError as error:
        return Branch("-", status=error.code)
    hat = positive_branch(problem, kmax, negated, sign="-")
    branch = Branch("-", [pair.as_negative() for pair in hat.pairs], slots=hat.slots)
    if direct_check and branch.pairs:
        direct_anchors = _oracle_anchors(problem, max(pair.k for pair in branch.pairs), problem.weight, "-")
        for pair in branch.pairs:
            anchor = direct_anchors[pair.k]
            try:
                if isinstance(anchor, Exception):
                    raise anchor
                direct = continue_in_p(anchor, problem.p, problem.weight, problem.shooting, problem.continuation_step, problem.resample_n)
            except SOLVE_ERRORS as error:
                branch.slots["direct{}".format(pair.k)] = error_code(error)
                continue
            pair.direct_deviation = abs(direct.lam - pair.lam) / abs(pair.lam)
    return branch


@timer(message="Spectrum enumerated in")
def enumerate_spectrum(problem, kmax=5, branches=("+", "-"), direct_check=True, verify=True, **verify_options):
    """Both eigenvalue sequences of a problem up to ``kmax``.

    Parameters
    ----------
    problem : :class:`compas_pbiharmonic.model.ProblemSpec`
    kmax : int, optional
        Number of pairs per sign, by default 5.
    branches : tuple[str], optional
        Which signs to compute.
    direct_check : bool, optional
        Re-derive the negative eigenvalues by direct shooting.
    verify : bool, optional
        Attach the :class:`VerifyReport` of :func:`build_verify_report`.
    **verify_options : dict
        Passed to :func:`build_verify_report`.

    Returns
    -------
    :class:`compas_pbiharmonic.results.SpectrumTable`
        Partial when some slots fail; their status is in ``slots``.

    """
    if kmax < 1:
        raise ValueError("kmax must be at least 1, got {}".format(kmax))
    plus = positive_branch(problem, kmax) if "+" in branches else Branch("+")
    minus = negative_branch(problem, kmax, direct_check) if "-" in branches else Branch("-", status="NotRequested")
    slots = dict(plus.slots)
    slots.update(minus.slots)
    table = SpectrumTable(problem, plus.pairs, minus.pairs, minus.status, slots)
    if verify:
        table.verify = build_verify_report(table, **verify_options)
    return table


# ==============================================================================
# sweeps
# ==============================================================================


@timer(message="p-sweep finished in")
def p_sweep(problem, k, p_grid, signs=("+",), jump_threshold=JUMP_THRESHOLD, raise_errors=True):
    """Eigenvalue curves ``p -> lam_k(p)`` along a grid of exponents.

    Each curve is continued from its p = 2 anchor in both directions.

    Parameters
    ----------
    problem : :class:`compas_pbiharmonic.model.ProblemSpec`
    k : int | list[int]
        Branch index or indices.
    p_grid : list[float]
        Sorted exponents, all larger than 1.
    signs : tuple[str], optional
    jump_threshold : float, optional
        Relative jump between adjacent points flagged as a violation.
    raise_errors : bool, optional
        Raise the first continuation error, or record it in the table.

    Returns
    -------
    :class:`compas_pbiharmonic.results.SweepTable`

    """
    p_grid = [float(p) for p in p_grid]
    if not p_grid or any(p <= 1.0 for p in p_grid) or any(b <= a for a, b in zip(p_grid, p_grid[1:])):
        raise ValueError("The p grid must be strictly increasing and above 1, got {!r}".format(p_grid))
    ks = [k] if isinstance(k, int) else list(k)
    table = SweepTable(problem, jump_threshold=jump_threshold)
    for sign in signs:
        try:
            weight = problem.weight if sign == "+" else negate_weight(problem.weight)
        except NotAdmissibleError as error:
            if raise_errors:
                raise
            for kk in ks:
                table.errors[(sign, kk)] = {"error": error.code, "last_p": None}
            continue
        anchors = anchor_pairs(problem, max(ks), weight)
        for kk in ks:
            points = []
            anchor = anchors[kk]
            if isinstance(anchor, Exception):
                if raise_errors:
                    raise anchor
                table.errors[(sign, kk)] = {"error": error_code(anchor), "last_p": None}
                continue
            try:
                for direction in (sorted(p for p in p_grid if p >= 2.0), sorted((p for p in p_grid if p < 2.0), reverse=True)):
                    current = anchor
                    for p in direction:
                        current = continue_in_p(current, p, weight, problem.shooting, problem.continuation_step, problem.resample_n)
                        points.append(current)
            except SOLVE_ERRORS as error:
                if raise_errors:
                    raise
                table.errors[(sign, kk)] = {"error": error_code(error), "last_p": getattr(error, "last_p", None)}
            factor = 1.0 if sign == "+" else -1.0
            table.curves[(sign, kk)] = sorted((pair.p, factor * pair.lam, len(pair.zeros)) for pair in points)
    return table


# ==============================================================================
# verification
# ==============================================================================


def _signed(weight, sign):
    return weight if sign == "+" else weight.negated()


def _pair_checks(pair, weight, cfg, partition):
    checks = []
    trace = retrace(pair, weight, cfg)
    classes = classify_zeros(trace)
    checks.append(Check("zero_count", len(pair.zeros) == pair.k - 1 and len(trace.zero_crossings) == pair.k - 1, float(len(trace.zero_crossings)), float(pair.k - 1), pair.sign, pair.k))
    checks.append(
        Check(
            "transversal_zeros",
            all(c["transversal"] for c in classes) and not trace.tangential_zeros,
            float(sum(c["transversal"] for c in classes)),
            float(len(classes)),
            pair.sign,
            pair.k,
            details={"zeros": trace.zero_crossings, "tangential": trace.tangential_zeros},
        )
    )
    checks.append(Check("navier_at_zeros", all(c["navier"] for c in classes), max([c["v"] for c in classes] or [0.0]), 1e-6, pair.sign, pair.k, advisory=True))
    checks.append(Check("residual", trace.residual <= RESIDUAL_TOL, trace.residual, RESIDUAL_TOL, pair.sign, pair.k))

    values = pair.eigenfunction.values
    if pair.k == 1:
        checks.append(Check("positivity", float(np.min(values)) > 0.0, float(np.min(values)), 0.0, pair.sign, pair.k))
    else:
        checks.append(Check("sign_change", float(np.min(values)) < 0.0 < float(np.max(values)), float(np.min(values)), 0.0, pair.sign, pair.k))

    try:
        domains = nodal_decompose(pair, weight)
    except NonAlternatingError as error:
        checks.append(Check("nodal_domains", False, sign=pair.sign, k=pair.k, details=str(error)))
        return checks
    checks.append(Check("nodal_domains", len(domains) == pair.k, float(len(domains)), float(pair.k), pair.sign, pair.k, details=[d.__data__ for d in domains]))
    checks.append(measure_bound_check(pair, domains, weight))
    checks.append(weight_admissible_on_domains(domains, weight, pair.lam))
    if partition:
        checks.append(equi_eigenvalue_partition_check(pair, domains, weight, cfg))
    return checks


def _simplicity_check(pair, weight, cfg, rng, seeds):
    deviations = []
    for _ in range(seeds):
        d_lam, d_beta = rng.uniform(-0.01, 0.01, 2)
        try:
            other = newton_solve(pair.lam * (1.0 + d_lam), pair.shoot_beta * (1.0 + d_beta), weight, pair.p, cfg, resample_n=99)
            deviations.append(abs(other.lam - pair.lam) / abs(pair.lam))
        except SOLVE_ERRORS:
            deviations.append(float("inf"))
    worst = max(deviations)
    return Check("simplicity", worst <= SIMPLICITY_TOL, worst, SIMPLICITY_TOL, pair.sign, pair.k, details={"seeds": seeds})


def _isolation_check(pair, weight, cfg, seeds, delta):
    limit = (1.0 - delta) * abs(pair.lam)
    short = cfg.replace(newton_max_iter=min(cfg.newton_max_iter, 15))
    found = []
    for lam in np.linspace(limit / seeds, limit, seeds):
        signed_lam = float(np.copysign(lam, pair.lam))
        beta = pair.shoot_beta * (lam / abs(pair.lam)) ** 0.5
        try:
            other = newton_solve(signed_lam, beta, weight, pair.p, short, resample_n=99)
        except SOLVE_ERRORS:
            continue
        if other.lam * pair.lam > 0 and abs(other.lam) <= limit:
            found.append(other.lam)
    return Check("isolation", not found, float(len(found)), 0.0, pair.sign, pair.k, details={"found": found, "delta": delta, "seeds": seeds})


def _mu1_check(pair, problem, weight):
    prob = DiscreteProblem(problem.grid_n, _signed(weight, pair.sign), pair.p)
    mu1 = mu1_curve(prob, [abs(pair.lam)])[0].mu1
    threshold = MU1_TOL * (1.0 + abs(pair.lam))
    return Check("mu1_zero", abs(mu1) <= threshold, abs(mu1), threshold, pair.sign, pair.k)


@timer(message="Verification finished in")
def build_verify_report(table, simplicity_seeds=10, isolation_seeds=8, delta=ISOLATION_DELTA, seed=None, partition=True, mu1=True):
    """Run every property check on the pairs of a table.

    Per pair: zero count and transversality, boundary residual by
    re-integration, positivity or sign change, nodal domains, measure bound,
    admissibility of the weight on every domain and, as advisories, the
    Navier conditions at the zeros and the equi-eigenvalue partition.
    Per branch: strict ordering, the lower bound ``|lam_1| >= 1 / max|m|``,
    ``mu_1(lam_1) = 0``, simplicity for ``k <= 3`` from perturbed Newton
    seeds, isolation of ``lam_1``, the single-zero characterisation of
    ``lam_2`` and the duality with direct negative shooting.

    Parameters
    ----------
    table : :class:`compas_pbiharmonic.results.SpectrumTable`
    simplicity_seeds : int, optional
    isolation_seeds : int, optional
    delta : float, optional
        Relative gap below ``lam_1`` searched by the isolation probe.
    seed : int, optional
        Seed of the perturbations, by default the ``SEED`` knob.
    partition : bool, optional
        Run the equi-eigenvalue partition sub-solves.
    mu1 : bool, optional
        Run the ``mu_1`` check.

    Returns
    -------
    :class:`compas_pbiharmonic.postprocess.VerifyReport`

    """
    problem = table.problem
    weight = problem.weight
    cfg = problem.shooting
    rng = np.random.default_rng(compas_pbiharmonic.SEED if seed is None else seed)
    report = VerifyReport()
    if not table.pairs:
        report.add(Check("nonempty", False))
        return report

    for slot, status in sorted(table.slots.items()):
        if status != "ok":
            report.add(Check("slot", False, details={"slot": slot, "error": status}))

    sup = weight.sup_norm()
    for sign in ("+", "-"):
        pairs = table.branch(sign)
        if not pairs:
            continue
        for pair in pairs:
            report.extend(_pair_checks(pair, weight, cfg, partition))
            if pair.k <= 3 and simplicity_seeds:
                report.add(_simplicity_check(pair, weight, cfg, rng, simplicity_seeds))

        lams = [abs(pair.lam) for pair in pairs]
        ks = [pair.k for pair in pairs]
        ordered = all(b > a for a, b in zip(lams, lams[1:])) and ks == sorted(ks)
        report.add(Check("ordering", ordered, sign=sign, details=[pair.lam for pair in pairs]))

        first = [pair for pair in pairs if pair.k == 1]
        if first:
            principal = first[0]
            bound = 1.0 / sup
            report.add(Check("principal_lower_bound", abs(principal.lam) >= bound, abs(principal.lam), bound, sign, 1))
            if isolation_seeds:
                report.add(_isolation_check(principal, weight, cfg, isolation_seeds, delta))
            if mu1:
                report.add(_mu1_check(principal, problem, weight))

        one_zero = [pair.k for pair in pairs if len(pair.zeros) == 1]
        if one_zero:
            report.add(Check("one_zero_is_second", all(k == 2 for k in one_zero), sign=sign, details=one_zero))

        if sign == "-":
            deviations = [pair.direct_deviation for pair in pairs if pair.direct_deviation is not None]
            if deviations:
                worst = max(deviations)
                report.add(Check("negative_duality", worst <= DUALITY_TOL, worst, DUALITY_TOL, sign))
    return report


# ==============================================================================
# monotonicity
# ==============================================================================


def _lambda_k(problem, k, weight):
    branch = positive_branch(problem, k, weight)
    pairs = [pair for pair in branch.pairs if pair.k == k]
    if not pairs:
        raise NoConvergenceError("No pair for k={} ({})".format(k, branch.slots))
    return pairs[0].lam


def weight_monotonicity_check(problem, k=1, shift=0.5):
    """``lam_k(m + shift) < lam_k(m)`` for a positive ``shift``.

    Returns
    -------
    :class:`compas_pbiharmonic.postprocess.Check`

    """
    lam = _lambda_k(problem, k, problem.weight)
    lam_shifted = _lambda_k(problem, k, problem.weight.shifted(shift))
    return Check("weight_monotonicity", lam_shifted < lam, lam - lam_shifted, 0.0, "+", k, details={"lambda": lam, "lambda_shifted": lam_shifted, "shift": shift})


def domain_monotonicity_check(problem, k=1, a=0.0, b=0.8):
    """``lam_k`` on ``[a, b]`` exceeds ``lam_k`` on [0, 1].

    The subproblem is solved on [0, 1] with the rescaled weight and mapped
    back by ``lam = lam~ / (b - a)^(2p)``.

    Raises
    ------
    :class:`compas_pbiharmonic.errors.NotAdmissibleError`
        If the weight is not positive anywhere on ``[a, b]``.

    """
    restricted = problem.weight.restricted(a, b)
    if not restricted.is_admissible():
        raise NotAdmissibleError("The weight is not admissible on [{}, {}].".format(a, b))
    lam = _lambda_k(problem, k, problem.weight)
    lam_sub = _lambda_k(problem, k, restricted) / (b - a) ** (2.0 * problem.p)
    return Check("domain_monotonicity", lam_sub > lam, lam_sub - lam, 0.0, "+", k, details={"lambda": lam, "lambda_subinterval": lam_sub, "a": a, "b": b})


# ==============================================================================
# mu_1 curve
# ==============================================================================


def mu1_concavity_check(points, slack=CONCAVITY_SLACK):
    """Three-point concavity of sampled ``mu_1``.

    For every ``la < lb < lc`` in the samples, ``mu_1(lb)`` may fall below
    the chord through ``mu_1(la)`` and ``mu_1(lc)`` by at most
    ``slack * (1 + max |mu_1|)``.

    Parameters
    ----------
    points : list[:class:`compas_pbiharmonic.solvers.Mu1Point`]
    slack : float, optional

    Returns
    -------
    :class:`compas_pbiharmonic.postprocess.Check`

    """
    samples = sorted((point.lam, point.mu1) for point in points)
    lams = np.array([lam for lam, _ in samples])
    mus = np.array([mu for _, mu in samples])
    if len(samples) < 3:
        return Check("mu1_concavity", True, 0.0, slack, details={"samples": len(samples)})
    threshold = slack * (1.0 + float(np.max(np.abs(mus))))
    worst = 0.0
    for a in range(len(samples) - 2):
        for c in range(a + 2, len(samples)):
            t = (lams[a + 1 : c] - lams[a]) / (lams[c] - lams[a])
            chord = (1.0 - t) * mus[a] + t * mus[c]
            worst = max(worst, float(np.max(chord - mus[a + 1 : c])))
    stalled = [point.lam for point in points if point.stalled]
    return Check("mu1_concavity", worst <= threshold, worst, threshold, details={"samples": len(samples), "stalled": stalled})
