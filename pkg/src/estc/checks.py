"""Built-in validation suite behind the verify command.

Every check compares a fast-path computation against an independently
rebuilt dense reference.  Basis tables are cross-checked against matrices
reconstructed from scratch, so a corrupted product or factor table is
caught even when both fast paths agree with each other.
"""

from __future__ import annotations

import numpy as np

from . import dirac_basis
from .config import RunConfig
from .dirac_basis import (
    char_invariants,
    dset_from_matrix,
    dset_inverse,
    dset_multiply,
    dset_square,
    gamma_matrix,
)
from .engine import (
    FieldTables,
    ProjectorAccumulator,
    bare_block,
    dense_operator,
    residual_table,
)
from .field import det_l, field_intensity
from .io import RunReport
from .lattice import Window, site_add
from .multispinor import random_multispinor


def _fresh_gammas() -> np.ndarray:
    return np.stack([gamma_matrix(nu) for nu in range(16)])


def _dense(d: np.ndarray, gammas: np.ndarray) -> np.ndarray:
    return np.einsum("...n,nij->...ij", d, gammas)


def check_basis(report: RunReport) -> None:
    gammas = _fresh_gammas()
    eye = np.eye(4)

    worst = max(
        float(np.abs(gammas[lam] @ gammas[lam].conj().T - eye).max()) for lam in range(16)
    )
    report.add("basis elements are unitary", worst, 0.0)

    worst = 0.0
    for lam in range(16):
        for mu in range(16):
            ref = gammas[lam] @ gammas[mu]
            fast = dirac_basis.FACTOR_TABLE[lam, mu] * gammas[lam ^ mu]
            worst = max(worst, float(np.abs(ref - fast).max()))
    report.add("factor table reproduces all 256 dense products", worst, 0.0)

    rng = np.random.default_rng(20260814)
    a = rng.standard_normal((64, 16)) + 1j * rng.standard_normal((64, 16))
    b = rng.standard_normal((64, 16)) + 1j * rng.standard_normal((64, 16))
    fast = _dense(dset_multiply(a, b), gammas)
    ref = _dense(a, gammas) @ _dense(b, gammas)
    report.add(
        "coefficient product matches dense product, 64 random pairs",
        float(np.abs(fast - ref).max()),
        1e-12,
    )
    fast = _dense(dset_square(a), gammas)
    ref = _dense(a, gammas) @ _dense(a, gammas)
    report.add(
        "coefficient square matches dense square", float(np.abs(fast - ref).max()), 1e-12
    )

    mats = rng.standard_normal((32, 4, 4)) + 1j * rng.standard_normal((32, 4, 4))
    report.add(
        "coefficient round trip recovers the matrix",
        float(np.abs(_dense(dset_from_matrix(mats), gammas) - mats).max()),
        1e-13,
    )
    report.add(
        "trace invariants match the dense characteristic polynomial",
        max(
            float(abs(char_invariants(dset_from_matrix(m)).i4 - np.linalg.det(m)))
            for m in mats
        ),
        1e-10,
    )

    shifted = mats + 5.0 * eye
    d = dset_from_matrix(shifted)
    resid = _dense(dset_multiply(dset_inverse(d), d), gammas) - eye
    report.add("closed-form inverse solves to identity", float(np.abs(resid).max()), 1e-12)


def check_field(cfg: RunConfig, report: RunReport) -> None:
    tables = FieldTables(cfg.field, cfg.params)
    window = Window(2, cfg.n_ref)
    sites = window.points()

    worst_gram = 0.0
    worst_inverse = 0.0
    worst_det = 0.0
    for n in sites:
        stack = tables.v_stack(n)
        gram = np.einsum("sij,skj->ik", stack, stack.conj())
        l_dense = dirac_basis.matrix_from_dset(tables.l_dset(n))
        worst_gram = max(worst_gram, float(np.abs(gram - l_dense).max()))
        a_dense = dirac_basis.matrix_from_dset(tables.a_dset(n))
        worst_inverse = max(worst_inverse, float(np.abs(a_dense @ l_dense - np.eye(4)).max()))
        det = det_l(n, cfg.field, cfg.params)
        i4 = char_invariants(tables.l_dset(n)).i4
        worst_det = max(worst_det, float(abs(i4 - det * det) / max(abs(i4), 1.0)))
    report.add("gram row matrix equals the coupling sum on 69 sites", worst_gram, 1e-12)
    report.add("closed-form gram inverse solves to identity", worst_inverse, 1e-12)
    report.add("reduced determinant squares to the dense determinant", worst_det, 1e-12)

    center = cfg.n_ref
    far = [site_add(center, s) for s in ((3, 0, 0, 1), (0, 0, 0, 4), (2, 1, 0, 3))]
    worst = max(float(np.abs(tables.overlap(center, n)).max()) for n in far)
    report.add("row overlaps vanish beyond coupling distance 2", worst, 0.0)
    near = [site_add(center, s) for s in ((1, 1, 0, 0), (0, 0, 2, 0), (1, 0, 1, 2))]
    worst = max(
        float(np.abs(tables.overlap(center, n) - tables.overlap(n, center).conj().T).max())
        for n in near
    )
    report.add("row overlaps are Hermitian pairs", worst, 1e-14)


def check_projector(cfg: RunConfig, report: RunReport) -> None:
    radius = min(cfg.radius, 2)
    window = Window(radius, cfg.n_ref)
    acc = ProjectorAccumulator(
        cfg.field, cfg.params, window, rcond_min=cfg.rcond_min
    ).run()
    stages = acc.stages_done

    worst_herm = 0.0
    worst_idem = 0.0
    worst_trace = 0.0
    for block in acc.blocks:
        dense = dense_operator([block], block.support())
        worst_herm = max(worst_herm, float(np.abs(dense - dense.conj().T).max()))
        worst_idem = max(worst_idem, float(np.abs(dense @ dense - dense).max()))
        worst_trace = max(worst_trace, float(abs(np.trace(dense).real - 4.0)))
    report.add("stage blocks are Hermitian", worst_herm, 1e-8)
    report.add("stage blocks are idempotent", worst_idem, 1e-8)
    report.add("stage blocks have trace 4", worst_trace, 1e-8)

    worst = 0.0
    for i in range(stages):
        for j in range(i + 1, stages):
            left, right = acc.blocks[i], acc.blocks[j]
            shared = set(left.phi) & set(right.phi)
            if not shared:
                continue
            cross = sum(left.phi[s] @ right.phi[s].conj().T for s in shared)
            worst = max(worst, float(np.abs(cross).max()))
    report.add("distinct stage blocks are mutually orthogonal", worst, 1e-8)

    report.add(
        "projector trace equals 4 x stage count",
        float(abs(acc.trace() - 4.0 * stages)),
        1e-6,
    )

    c = random_multispinor(window.points(), cfg.seed)
    scale = c.norm()
    for n in acc.processed_sites()[: min(3, stages)]:
        bare = bare_block(n, acc.tables, window)
        image = bare.apply(c)
        absorbed = acc.apply_projector(image)
        report.add(
            f"projector absorbs the bare row block at {n}",
            (absorbed - image).norm() / max(image.norm(), 1e-300),
            1e-8,
        )

    solution = acc.apply_fundamental(c)
    worst = max(
        value for _, value in residual_table(solution, acc.tables, acc.processed_sites())
    )
    report.add(
        "projected seed solves every processed row",
        worst / max(scale, 1e-300),
        cfg.residual_tol,
    )
    report.notes.append(
        f"projector run: radius {radius}, {stages} stages, field intensity "
        f"{field_intensity(cfg.field):.6g}"
    )


def run_verify(cfg: RunConfig) -> RunReport:
    report = RunReport("validation suite")
    check_basis(report)
    check_field(cfg, report)
    check_projector(cfg, report)
    return report
