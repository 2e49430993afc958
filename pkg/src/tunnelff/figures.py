"""Reproduction presets for the eight report figures.

Every preset writes delimited data (the primary artifact) and renders a
matplotlib figure alongside it.  Rendering can be disabled; the CSV
schemas are identical either way.
"""

import numpy as np

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from . import stationary, transport
from .config import ScenarioConfig
from .errors import ConfigError
from .io import Manifest, write_csv
from .scenario import FIELDS_HEADER, TRANSPORT_HEADER, _k_tag

ECKART_PRESET = ScenarioConfig(model="eckart", k=(1.2, 1.6, 1.8),
                               vbar=1.0, t_ff=10.0)
DELTA_PRESET = ScenarioConfig(model="double_delta", k=(0.4, 0.8, 1.2),
                              vbar=1.0, t_ff=1.0)


def preset_config(number):
    if number in (1, 2, 3):
        return ECKART_PRESET
    if number == 4:
        return ScenarioConfig(model="eckart", k=(1.2, 1.8), vbar=1.0,
                              t_ff=10.0, nt=60)
    if number in (5, 6, 7):
        return DELTA_PRESET
    if number == 8:
        return ScenarioConfig(model="double_delta", k=(0.4, 1.2), vbar=1.0,
                              t_ff=1.0, nt=60)
    raise ConfigError(f"figure number must be 1..8, got {number}")


def run_figure(number, out_dir, cfg=None, plot=True, threads=1):
    """Generate the data (and, by default, the rendering) for one figure."""
    if cfg is None:
        cfg = preset_config(number)
    fn = {1: _figure_potential_eckart, 2: _figure_surface, 3: _figure_sections,
          4: _figure_fields, 5: _figure_potential_delta, 6: _figure_surface,
          7: _figure_sections, 8: _figure_fields}[number]
    return fn(number, cfg, out_dir, plot, threads)


def _surface_wavenumbers(cfg, n=20):
    thr = cfg.barrier().geometry().k_threshold
    lo = thr + 0.05 if thr > 0 else 0.1
    return np.linspace(lo, 2.0, n)


def _figure_potential_eckart(number, cfg, out_dir, plot, threads):
    manifest = Manifest(f"figure {number}", "")
    model = cfg.barrier()
    x = np.linspace(-1.0, 1.0, 201)
    a_values = np.linspace(0.0, 10.0, 101)
    surf = np.array([model.v0(x, a) for a in a_values])
    paths = [write_csv(f"{out_dir}/figure{number}_potential.csv",
                       ["a", "x", "v0"],
                       [np.repeat(a_values, len(x)), np.tile(x, len(a_values)),
                        surf.ravel()])]
    profiles = {a: model.v0(x, a) for a in (1.0, 5.0, 10.0)}
    paths.append(write_csv(
        f"{out_dir}/figure{number}_profiles.csv",
        ["x", "v0_a1", "v0_a5", "v0_a10"],
        [x] + [profiles[a] for a in (1.0, 5.0, 10.0)]))
    k0 = 1.2
    T = np.array([stationary.transmission(model, k0, a) for a in a_values])
    paths.append(write_csv(f"{out_dir}/figure{number}_transmission.csv",
                           ["a", "T"], [a_values, T]))
    if plot:
        fig, axes = plt.subplots(3, 1, figsize=(6, 9))
        pm = axes[0].pcolormesh(x, a_values, 2.0 * surf, shading="auto")
        fig.colorbar(pm, ax=axes[0], label="V0 / (hbar^2/2m)")
        axes[0].set(xlabel="x", ylabel="A", title="barrier vs control parameter")
        for a, v in profiles.items():
            axes[1].plot(x, 2.0 * v, label=f"A = {a:g}")
        axes[1].legend()
        axes[1].set(xlabel="x", ylabel="V0 / (hbar^2/2m)")
        axes[2].plot(a_values, T)
        axes[2].set(xlabel="A", ylabel="T", title=f"stationary T at k = {k0}")
        paths.append(_save(fig, f"{out_dir}/figure{number}.png"))
    return _finish(manifest, paths, out_dir)


def _figure_potential_delta(number, cfg, out_dir, plot, threads):
    manifest = Manifest(f"figure {number}", "")
    model = cfg.barrier()
    g_values = np.linspace(model.r_min, model.r_max, 101)
    left = np.array([model.strengths(g)[0] for g in g_values])
    right = np.array([model.strengths(g)[1] for g in g_values])
    paths = [write_csv(f"{out_dir}/figure{number}_strengths.csv",
                       ["gamma", "h_left", "h_right"], [g_values, left, right])]
    k0 = 1.0
    T = np.array([stationary.transmission(model, k0, g) for g in g_values])
    paths.append(write_csv(f"{out_dir}/figure{number}_transmission.csv",
                           ["gamma", "T"], [g_values, T]))
    if plot:
        fig, axes = plt.subplots(2, 1, figsize=(6, 6))
        axes[0].plot(g_values, left, label=f"strength at x = -{model.a:g}")
        axes[0].plot(g_values, right, label=f"strength at x = +{model.a:g}")
        axes[0].legend()
        axes[0].set(xlabel="gamma", ylabel="strength / (hbar^2/2m)")
        axes[1].plot(g_values, T)
        axes[1].set(xlabel="gamma", ylabel="T", title=f"stationary T at k = {k0}")
        paths.append(_save(fig, f"{out_dir}/figure{number}.png"))
    return _finish(manifest, paths, out_dir)


def _figure_surface(number, cfg, out_dir, plot, threads):
    """T_ff(k, t) surface and its deviation from the stationary curve."""
    manifest = Manifest(f"figure {number}", "")
    model = cfg.barrier()
    sched = cfg.schedule()
    ks = _surface_wavenumbers(cfg)
    nt = min(cfg.nt, 80)
    rows_k, rows_t, rows_tff, rows_tad = [], [], [], []
    for k in ks:
        tr = transport.trace(model, k, sched, n_samples=nt, grid=cfg.grid(),
                             c=cfg.c)
        rows_k.append(np.full(len(tr.times), k))
        rows_t.append(tr.times)
        rows_tff.append(tr.T_ff)
        rows_tad.append(tr.T_ad)
    kk = np.concatenate(rows_k)
    tt = np.concatenate(rows_t)
    tff = np.concatenate(rows_tff)
    tad = np.concatenate(rows_tad)
    paths = [write_csv(f"{out_dir}/figure{number}_surface.csv",
                       ["k", "t", "T_ff", "T_ad", "deviation"],
                       [kk, tt, tff, tad, tff - tad])]
    if plot:
        nt_pts = len(rows_t[0])
        fig, axes = plt.subplots(2, 1, figsize=(6, 7))
        for ax, z, label in ((axes[0], tff, "T_ff"),
                             (axes[1], tff - tad, "T_ff - T_ad")):
            pm = ax.pcolormesh(rows_t[0], ks, z.reshape(len(ks), nt_pts),
                               shading="auto")
            fig.colorbar(pm, ax=ax, label=label)
            ax.set(xlabel="t", ylabel="k")
        paths.append(_save(fig, f"{out_dir}/figure{number}.png"))
    return _finish(manifest, paths, out_dir)


def _figure_sections(number, cfg, out_dir, plot, threads):
    """Per-k transport traces: drive value vs instantaneous stationary value."""
    manifest = Manifest(f"figure {number}", "")
    model = cfg.barrier()
    sched = cfg.schedule()
    paths = []
    traces = {}
    for k in cfg.k:
        tr = transport.trace(model, k, sched, n_samples=cfg.nt,
                             grid=cfg.grid(), c=cfg.c)
        traces[k] = tr
        paths.append(write_csv(
            f"{out_dir}/figure{number}_transport_k{_k_tag(k)}.csv",
            TRANSPORT_HEADER,
            [tr.times, tr.r_of_t, tr.T_ff, tr.R_ff, tr.delta_u, tr.T_ad]))
    if plot:
        fig, ax = plt.subplots(figsize=(6, 4))
        for k, tr in traces.items():
            line, = ax.plot(tr.times, tr.T_ff, label=f"k = {k:g}")
            ax.plot(tr.times, tr.T_ad, "--", color=line.get_color())
        ax.set(xlabel="t", ylabel="T", title="drive (solid) vs stationary (dashed)")
        ax.legend()
        paths.append(_save(fig, f"{out_dir}/figure{number}.png"))
    return _finish(manifest, paths, out_dir)


def _figure_fields(number, cfg, out_dir, plot, threads):
    """Electric-field lattice per wavenumber."""
    from .drive import build_field_set

    manifest = Manifest(f"figure {number}", "")
    model = cfg.barrier()
    sched = cfg.schedule()
    times = sched.times(cfg.nt)
    paths = []
    if plot:
        fig, axes = plt.subplots(len(cfg.k), 1, figsize=(6, 3.5 * len(cfg.k)),
                                 squeeze=False)
    for i, k in enumerate(cfg.k):
        fs = build_field_set(model, k, sched, times, grid=cfg.grid(), c=cfg.c)
        tt = np.repeat(fs.times, len(fs.grid))
        xx = np.tile(fs.grid, len(fs.times))
        cols = [tt, xx, fs.a_ff.ravel(), fs.v_ff.ravel(), fs.e_ff.ravel()]
        keep = ~np.isnan(cols[4])
        paths.append(write_csv(f"{out_dir}/fields_k{_k_tag(k)}.csv",
                               FIELDS_HEADER, [c[keep] for c in cols]))
        if plot:
            ax = axes[i, 0]
            z = np.ma.masked_invalid(fs.e_ff)
            pm = ax.pcolormesh(fs.grid, fs.times, z, shading="auto",
                               cmap="RdBu_r")
            fig.colorbar(pm, ax=ax, label="E_ff")
            ax.set(xlabel="x", ylabel="t", title=f"k = {k:g}")
    if plot:
        paths.append(_save(fig, f"{out_dir}/figure{number}.png"))
    return _finish(manifest, paths, out_dir)


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _finish(manifest, paths, out_dir):
    for p in paths:
        manifest.add_output(p)
    manifest.write(out_dir)
    return manifest
