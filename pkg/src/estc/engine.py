"""Recurrent construction of the system projector on a truncated window.

Row n of the coupled system reads sum_s V(n,s) c(n+s) = 0.  Packing the
four scalar rows at site n into the rank-4 Hermitian block

    P(n): c'(m') = V(n, m'-n)^dag a(n) sum_s V(n,s) c(n+s),

the full system becomes P(n)C = 0 for all n.  The accumulator processes
one scheduled site per stage and maintains the projector onto the span of
all processed rows as a sum of mutually orthogonal rank-4 blocks

    rho_k: c'(m') = Phi_k(m')^dag A_k sum_n' Phi_k(n') c(n'),

where Phi_k are the row coefficients of stage k after subtracting its
projection onto all earlier stages, expressed through stage-to-stage
coupling matrices C_kj, and A_k is the inverse of the deflated Gram matrix
L(m) - G_k(m).  The pseudoinversion behind the orthogonalization thus
reduces to inverting one 4x4 matrix per stage; a singular one means the
new row is linearly dependent on the processed subspace and aborts the
stage with diagnostics.

The complement U - P of the accumulated projector maps any seed
multispinor onto the solution subspace of the processed rows; residuals of
unprocessed rows measure the truncation error of the window.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .dirac_basis import dset_from_matrix, dset_inverse, matrix_from_dset
from .errors import CouplingLimitExceeded, NotInterior, SingularMatrix, StageSingular
from .field import (
    DimensionlessParams,
    FieldConfig,
    a_matrix,
    l_matrix,
    v_coupling,
    validate,
)
from .lattice import SHIFTS_S13, Site, Window, couples, make_schedule, site_add
from .multispinor import Multispinor


class FieldTables:
    """Per-site caches of coupling stacks, Gram rows, and overlaps.

    The twelve field-shift coupling matrices are site-independent, so only
    the zero-shift matrix is rebuilt per site.  All entries behave as pure
    functions of (field, params, site).
    """

    def __init__(self, f: FieldConfig, p: DimensionlessParams):
        validate(f, p)
        self.field = f
        self.params = p
        self._field_v = np.stack(
            [matrix_from_dset(v_coupling((0, 0, 0, 0), s, f, p)) for s in SHIFTS_S13[1:]]
        )
        self._shift_index = {s: i for i, s in enumerate(SHIFTS_S13)}
        self._v: dict[Site, np.ndarray] = {}
        self._l: dict[Site, np.ndarray] = {}
        self._a: dict[Site, np.ndarray] = {}
        self._overlap: dict[tuple[Site, Site], np.ndarray] = {}

    def v_stack(self, n: Site) -> np.ndarray:
        """(13, 4, 4) coupling matrices of row n, in stencil shift order."""
        out = self._v.get(n)
        if out is None:
            v0 = matrix_from_dset(v_coupling(n, (0, 0, 0, 0), self.field, self.params))
            out = np.concatenate([v0[None], self._field_v])
            out.setflags(write=False)
            self._v[n] = out
        return out

    def l_dset(self, n: Site) -> np.ndarray:
        out = self._l.get(n)
        if out is None:
            out = l_matrix(n, self.field, self.params)
            out.setflags(write=False)
            self._l[n] = out
        return out

    def a_dset(self, n: Site) -> np.ndarray:
        out = self._a.get(n)
        if out is None:
            out = a_matrix(n, self.field, self.params)
            out.setflags(write=False)
            self._a[n] = out
        return out

    def overlap(self, m: Site, n: Site) -> np.ndarray:
        """Dense N(m,n), cached together with its conjugate transpose."""
        key = (m, n)
        out = self._overlap.get(key)
        if out is None:
            diff = tuple(a - b for a, b in zip(m, n))
            out = np.zeros((4, 4), dtype=complex)
            vm = self.v_stack(m)
            vn = self.v_stack(n)
            for i, s in enumerate(SHIFTS_S13):
                other = (diff[0] + s[0], diff[1] + s[1], diff[2] + s[2], diff[3] + s[3])
                j = self._shift_index.get(other)
                if j is not None:
                    out += vm[i] @ vn[j].conj().T
            out.setflags(write=False)
            self._overlap[key] = out
            transposed = out.conj().T.copy()
            transposed.setflags(write=False)
            self._overlap[(n, m)] = transposed
        return out


@dataclass
class OperatorBlock:
    """One rank-4 Hermitian term of the accumulated projector.

    core_dset holds the 16 real basis coefficients of the stage core; phi
    maps each support site n' to its 4x4 row-coefficient matrix.
    """

    site: Site
    core_dset: np.ndarray
    phi: dict[Site, np.ndarray]
    stage: int | None = None

    def __post_init__(self):
        self._core = None
        self._stack = None

    @property
    def core(self) -> np.ndarray:
        if self._core is None:
            self._core = matrix_from_dset(self.core_dset)
        return self._core

    def support(self) -> list[Site]:
        return sorted(self.phi)

    def _stacks(self) -> tuple[list[Site], np.ndarray]:
        if self._stack is None:
            sites = list(self.phi)
            self._stack = (sites, np.stack([self.phi[s] for s in sites]))
        return self._stack

    def row_contraction(self, c: Multispinor) -> np.ndarray:
        """sum_n' Phi(n') c(n'), the 4-vector this block sees in c."""
        sites, stack = self._stacks()
        gathered = np.stack([c[s] for s in sites])
        return np.einsum("sij,sj->i", stack, gathered)

    def apply(self, c: Multispinor, out: Multispinor | None = None) -> Multispinor:
        """Accumulate (this block) @ c into out."""
        if out is None:
            out = Multispinor()
        y = self.core @ self.row_contraction(c)
        sites, stack = self._stacks()
        scattered = np.einsum("sij,i->sj", stack.conj(), y)
        for site, value in zip(sites, scattered):
            out.add_to(site, value)
        return out

    def component(self, m_prime: Site, n_prime: Site) -> np.ndarray:
        """4x4 component block between two sites; zero outside support."""
        left = self.phi.get(m_prime)
        right = self.phi.get(n_prime)
        if left is None or right is None:
            return np.zeros((4, 4), dtype=complex)
        return left.conj().T @ self.core @ right

    def trace(self) -> float:
        _, stack = self._stacks()
        gram = np.einsum("sij,skj->ik", stack, stack.conj())
        return float(np.trace(self.core @ gram).real)


def bare_block(
    n: Site,
    tables: FieldTables,
    window: Window | None = None,
    stage: int | None = None,
) -> OperatorBlock:
    """The single-row projector P(n): core a(n), rows V(n,s) on the stencil."""
    if window is not None and not window.interior(n):
        raise NotInterior(f"site {n} has stencil neighbors outside the window")
    stack = tables.v_stack(n)
    phi = {site_add(n, s): stack[i] for i, s in enumerate(SHIFTS_S13)}
    return OperatorBlock(site=n, core_dset=tables.a_dset(n), phi=phi, stage=stage)


@dataclass
class StageDiagnostics:
    stage: int
    site: Site
    rcond: float
    gram_asymmetry: float
    support_size: int
    elapsed: float


class ProjectorAccumulator:
    """Stage-by-stage builder of the projector onto the processed rows.

    Stage k orthogonalizes the row block of schedule[k] against all
    previous blocks through the coupling recurrences, keeping every
    pseudoinversion a single 4x4 inverse.  Couplings to all earlier stages
    are retained (quadratic memory in the stage count, capped by
    max_couplings); overlap factors that vanish beyond coupling distance 2
    are skipped only where a zero factor makes the term identically zero.
    """

    def __init__(
        self,
        f: FieldConfig,
        p: DimensionlessParams,
        window: Window,
        schedule: list[Site] | None = None,
        *,
        rcond_min: float = 1e-10,
        max_couplings: int = 500_000,
    ):
        self.tables = FieldTables(f, p)
        self.window = window
        if schedule is None:
            schedule = make_schedule(window)
        else:
            schedule = list(schedule)
            seen = set()
            for site in schedule:
                if not window.interior(site):
                    raise NotInterior(f"scheduled site {site} is not interior to the window")
                if site in seen:
                    raise ValueError(f"site {site} appears twice in the schedule")
                seen.add(site)
        self.schedule = schedule
        self.rcond_min = rcond_min
        self.max_couplings = max_couplings
        self.blocks: list[OperatorBlock] = []
        self.couplings: dict[tuple[int, int], np.ndarray] = {}
        self.diagnostics: list[StageDiagnostics] = []

    @property
    def stages_done(self) -> int:
        return len(self.blocks)

    def processed_sites(self) -> list[Site]:
        return self.schedule[: self.stages_done]

    def stage_step(self) -> OperatorBlock:
        """Process the next scheduled site and append its block."""
        k = self.stages_done
        if k >= len(self.schedule):
            raise IndexError("schedule exhausted")
        started = time.perf_counter()
        m = self.schedule[k]
        tables = self.tables
        n_to = {}  # j -> N(m, m_j) for coupled earlier sites
        for j, site in enumerate(self.schedule[:k]):
            if couples(m, site):
                n_to[j] = tables.overlap(m, site)

        # row coefficients of stage j projected onto stage j's core, seen
        # from the new row: D_kj = [N(m,m_j) - sum_i N(m,m_i) C_ij] A_j
        d_mats: dict[int, np.ndarray] = {}
        for j in range(k - 1, 0, -1):
            acc = n_to[j].copy() if j in n_to else np.zeros((4, 4), dtype=complex)
            for i in range(j):
                if i in n_to:
                    # C_ij(m_i, m_j) is the dagger of the stored C_ji
                    acc -= n_to[i] @ self.couplings[(j, i)].conj().T
            d_mats[j] = acc @ self.blocks[j].core

        # expansion of the projected row over the bare rows of earlier sites
        c_new: dict[int, np.ndarray] = {}
        for i in range(k - 1, 0, -1):
            acc = d_mats[i].copy()
            for j in range(i + 1, k):
                acc -= d_mats[j] @ self.couplings[(j, i)]
            c_new[i] = acc
        if k >= 1:
            acc = (
                n_to[0] @ self.blocks[0].core
                if 0 in n_to
                else np.zeros((4, 4), dtype=complex)
            )
            for j in range(1, k):
                acc -= d_mats[j] @ self.couplings[(j, 0)]
            c_new[0] = acc

        if len(self.couplings) + len(c_new) > self.max_couplings:
            raise CouplingLimitExceeded(
                f"stage {k} needs {len(self.couplings) + len(c_new)} coupling matrices, "
                f"cap is {self.max_couplings}"
            )

        # deflated Gram matrix and its inverse, both with real coefficients
        gram_deflation = np.zeros((4, 4), dtype=complex)
        for j, c_mat in c_new.items():
            site = self.schedule[j]
            if couples(site, m):
                gram_deflation += c_mat @ tables.overlap(site, m)
        deflation_dset = dset_from_matrix(gram_deflation)
        asymmetry = float(np.max(np.abs(deflation_dset.imag))) if k else 0.0
        gram_dset = tables.l_dset(m) - deflation_dset.real
        gram_dense = matrix_from_dset(gram_dset)
        singular_values = np.linalg.svd(gram_dense, compute_uv=False)
        rcond = float(singular_values[-1] / singular_values[0])
        if rcond < self.rcond_min:
            raise StageSingular(k, m, rcond)
        if k == 0:
            core_dset = tables.a_dset(m)
        else:
            try:
                core_dset = dset_inverse(gram_dset).real
            except SingularMatrix:
                raise StageSingular(k, m, rcond) from None

        phi: dict[Site, np.ndarray] = {}
        stack_m = tables.v_stack(m)
        for i, s in enumerate(SHIFTS_S13):
            phi[site_add(m, s)] = stack_m[i].copy()
        for j, c_mat in c_new.items():
            site = self.schedule[j]
            stack_j = tables.v_stack(site)
            for i, s in enumerate(SHIFTS_S13):
                target = site_add(site, s)
                contribution = c_mat @ stack_j[i]
                if target in phi:
                    phi[target] = phi[target] - contribution
                else:
                    phi[target] = -contribution

        self.couplings.update({(k, j): mat for j, mat in c_new.items()})
        block = OperatorBlock(site=m, core_dset=core_dset, phi=phi, stage=k)
        self.blocks.append(block)
        self.diagnostics.append(
            StageDiagnostics(
                stage=k,
                site=m,
                rcond=rcond,
                gram_asymmetry=asymmetry,
                support_size=len(phi),
                elapsed=time.perf_counter() - started,
            )
        )
        return block

    def run(self, stages: int | None = None) -> "ProjectorAccumulator":
        """Process the whole schedule (or its first `stages` entries)."""
        target = len(self.schedule) if stages is None else stages
        while self.stages_done < target:
            self.stage_step()
        return self

    def trace(self) -> float:
        return sum(block.trace() for block in self.blocks)

    def apply_projector(self, c: Multispinor) -> Multispinor:
        """Accumulated projector applied to c: the processed-row component."""
        out = Multispinor()
        for block in self.blocks:
            block.apply(c, out)
        return out

    def apply_fundamental(self, c: Multispinor) -> Multispinor:
        """c minus its processed-row component: a solution of processed rows."""
        return c - self.apply_projector(c)


def residual(
    c: Multispinor,
    n: Site,
    f: FieldConfig,
    p: DimensionlessParams,
    window: Window | None = None,
) -> float:
    """Norm of row n of the coupled system evaluated on c.

    When a window is given, n must be interior so the row involves only
    in-window amplitudes.  Without one, c's finite support defines the
    zero extension and any row can be evaluated.
    """
    if window is not None and not window.interior(n):
        raise NotInterior(f"site {n} has stencil neighbors outside the window")
    row = np.zeros(4, dtype=complex)
    for s in SHIFTS_S13:
        neighbor = site_add(n, s)
        if neighbor in c:
            row += matrix_from_dset(v_coupling(n, s, f, p)) @ c[neighbor]
    return float(np.linalg.norm(row))


def residual_table(
    c: Multispinor, tables: FieldTables, sites: list[Site]
) -> list[tuple[Site, float]]:
    """Row residuals over the given sites, with c extended by zero."""
    out = []
    for n in sites:
        stack = tables.v_stack(n)
        row = np.zeros(4, dtype=complex)
        for i, s in enumerate(SHIFTS_S13):
            neighbor = site_add(n, s)
            if neighbor in c:
                row += stack[i] @ c[neighbor]
        out.append((n, float(np.linalg.norm(row))))
    return out


def dense_operator(blocks: list[OperatorBlock], sites: list[Site]) -> np.ndarray:
    """Dense matrix of a block sum on the space spanned by the given sites."""
    index = {site: i for i, site in enumerate(sites)}
    dim = 4 * len(sites)
    out = np.zeros((dim, dim), dtype=complex)
    for block in blocks:
        for m_prime, left in block.phi.items():
            i = index.get(m_prime)
            if i is None:
                continue
            left_core = left.conj().T @ block.core
            for n_prime, right in block.phi.items():
                j = index.get(n_prime)
                if j is not None:
                    out[4 * i : 4 * i + 4, 4 * j : 4 * j + 4] += left_core @ right
    return out
