"""Scenario execution: stationary sweeps, transport traces, field lattices,
and the PDE verification run, each exported with a manifest.

Invariant failures raise InvariantError (CLI exit code 2); configuration
problems raise ConfigError (exit code 3).
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import drive, stationary, tdse, transport
from .config import ScenarioConfig, emit_config
from .errors import InvariantError
from .io import Manifest, write_csv

TRANSPORT_HEADER = ["t", "R", "T_ff", "R_ff", "delta_u", "T_ad"]
FIELDS_HEADER = ["t", "x", "a_ff", "v_ff", "e_ff"]
STATIONARY_HEADER = ["k", "R", "T", "R_refl", "t_r_re", "t_r_im",
                     "r_f_re", "r_f_im", "unitarity_residual"]


def _k_tag(k):
    return ("%g" % k).replace(".", "p").replace("-", "m")


def _map_over_k(func, ks, threads):
    if threads <= 1 or len(ks) <= 1:
        return [func(k) for k in ks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, ks))


def run_stationary(cfg: ScenarioConfig, out_dir, threads=1):
    """Stationary sweep over k x R; checks unitarity on every sample."""
    manifest = Manifest("stationary", emit_config(cfg))
    model = cfg.barrier()
    sched = cfg.schedule()
    r_values = np.linspace(cfg.r0, sched.r_final, cfg.nt + 1)
    rows = {name: [] for name in STATIONARY_HEADER}
    worst = 0.0
    for k in cfg.k:
        for r in r_values:
            sol = stationary.solve(model, k, r, grid=cfg.grid())
            T, R = stationary.stationary_transport(sol)
            resid = abs(T + R - 1.0)
            worst = max(worst, resid)
            for name, val in zip(
                    STATIONARY_HEADER,
                    (k, r, T, R, sol.t_r.real, sol.t_r.imag,
                     sol.r_f.real, sol.r_f.imag, resid)):
                rows[name].append(val)
    path = write_csv(f"{out_dir}/stationary.csv", STATIONARY_HEADER,
                     [rows[name] for name in STATIONARY_HEADER])
    manifest.add_output(path)
    manifest.add_check("unitarity", worst <= 1e-10, worst, 1e-10)
    mpath = manifest.write(out_dir)
    if not manifest.all_passed:
        raise InvariantError(f"stationary unitarity failed: {worst:.3e} "
                             f"(see {mpath})")
    return manifest


def run_transport(cfg: ScenarioConfig, out_dir, threads=1):
    """Transport traces per wavenumber with endpoint and identity checks."""
    manifest = Manifest("transport", emit_config(cfg))
    model = cfg.barrier()
    sched = cfg.schedule()

    def one(k):
        return transport.trace(model, k, sched, n_samples=cfg.nt,
                               grid=cfg.grid(), c=cfg.c)

    traces = _map_over_k(one, cfg.k, threads)
    for k, tr in zip(cfg.k, traces):
        path = write_csv(
            f"{out_dir}/transport_k{_k_tag(k)}.csv", TRANSPORT_HEADER,
            [tr.times, tr.r_of_t, tr.T_ff, tr.R_ff, tr.delta_u, tr.T_ad])
        manifest.add_output(path)
        end_gap = abs(tr.T_ff[-1] - tr.T_ad[-1])
        du_ends = max(abs(tr.delta_u[0]), abs(tr.delta_u[-1]))
        identity = np.max(np.abs(tr.T_ff + tr.R_ff - 1.0 - tr.delta_u))
        manifest.add_check(f"endpoint_restoration_k{_k_tag(k)}",
                           end_gap <= 1e-8, end_gap, 1e-8)
        manifest.add_check(f"delta_u_endpoints_k{_k_tag(k)}",
                           du_ends <= 1e-9, du_ends, 1e-9)
        manifest.add_check(f"unitarity_identity_k{_k_tag(k)}",
                           identity <= 1e-10, identity, 1e-10)
    mpath = manifest.write(out_dir)
    if not manifest.all_passed:
        raise InvariantError(f"transport invariants failed (see {mpath})")
    return manifest


def run_drive_fields(cfg: ScenarioConfig, out_dir, threads=1):
    """Drive-field lattices per wavenumber (rows at delta supports dropped)."""
    manifest = Manifest("drive-fields", emit_config(cfg))
    model = cfg.barrier()
    sched = cfg.schedule()
    times = sched.times(cfg.nt)

    def one(k):
        return drive.build_field_set(model, k, sched, times,
                                     grid=cfg.grid(), c=cfg.c)

    sets = _map_over_k(one, cfg.k, threads)
    worst_end = 0.0
    for k, fs in zip(cfg.k, sets):
        tt = np.repeat(fs.times, len(fs.grid))
        xx = np.tile(fs.grid, len(fs.times))
        cols = [tt, xx, fs.a_ff.ravel(), fs.v_ff.ravel(), fs.e_ff.ravel()]
        keep = ~np.isnan(cols[4])
        cols = [c[keep] for c in cols]
        path = write_csv(f"{out_dir}/fields_k{_k_tag(k)}.csv",
                         FIELDS_HEADER, cols)
        manifest.add_output(path)
        end = max(np.nanmax(np.abs(fs.e_ff[0])), np.nanmax(np.abs(fs.e_ff[-1])),
                  np.max(np.abs(fs.a_ff[0])), np.max(np.abs(fs.a_ff[-1])))
        worst_end = max(worst_end, end)
        manifest.add_check(f"endpoint_silence_k{_k_tag(k)}",
                           end <= 1e-9, end, 1e-9)
    mpath = manifest.write(out_dir)
    if not manifest.all_passed:
        raise InvariantError(
            f"drive endpoint silence failed: {worst_end:.3e} (see {mpath})")
    return manifest


def run_verify(cfg: ScenarioConfig, out_dir, threads=1, refine=False):
    """PDE verification: residual convergence plus propagated fidelity."""
    manifest = Manifest("verify", emit_config(cfg))
    model = cfg.barrier()
    sched = cfg.schedule()
    k = cfg.k[0]
    pcfg = tdse.PropagatorConfig(x_min=cfg.x_min, x_max=cfg.x_max,
                                 nx=min(cfg.nx, 2001), dt=sched.t_ff / 2000.0,
                                 t_end=sched.t_ff)
    rcfg = tdse.PropagatorConfig(x_min=cfg.x_min, x_max=cfg.x_max, nx=1501,
                                 dt=sched.t_ff / 1000.0, t_end=sched.t_ff)
    residuals, orders = tdse.residual_convergence(
        model, k, sched, 0.37 * sched.t_ff, rcfg, levels=3, c=cfg.c)
    ftrace = tdse.propagate(model, k, sched, pcfg, c=cfg.c)
    path = write_csv(f"{out_dir}/fidelity.csv", ["t", "fidelity"],
                     [ftrace.times, ftrace.fidelity])
    manifest.add_output(path)
    path = write_csv(f"{out_dir}/residuals.csv", ["level", "residual"],
                     [np.arange(len(residuals)), residuals])
    manifest.add_output(path)
    manifest.add_check("residual_order", min(orders) >= 1.9, min(orders), 1.9)
    manifest.add_check("min_fidelity", ftrace.min_fidelity >= 0.999,
                       ftrace.min_fidelity, 0.999)
    manifest.add_check("final_target_fidelity",
                       ftrace.final_target_fidelity >= 0.999,
                       ftrace.final_target_fidelity, 0.999)
    if refine:
        fref = tdse.propagate(model, k, sched, pcfg.refined(), c=cfg.c)
        manifest.add_check("fidelity_improves",
                           fref.min_fidelity >= ftrace.min_fidelity - 1e-12,
                           fref.min_fidelity)
    mpath = manifest.write(out_dir)
    if not manifest.all_passed:
        raise InvariantError(f"verification failed (see {mpath})")
    return manifest


def run_scenario(cfg: ScenarioConfig, out_dir, threads=1, verify=False):
    """Full pipeline: stationary sweep, transport traces, drive fields,
    and optionally the PDE verification."""
    manifests = [
        run_stationary(cfg, out_dir, threads),
        run_transport(cfg, out_dir, threads),
        run_drive_fields(cfg, out_dir, threads),
    ]
    if verify:
        manifests.append(run_verify(cfg, out_dir, threads))
    combined = Manifest("scenario", emit_config(cfg))
    for m in manifests:
        combined.data["outputs"].extend(m.data["outputs"])
        combined.data["checks"].update(m.data["checks"])
    combined.write(out_dir)
    return combined
