"""Thin command-line client for the wignerlab service.

Commands run against an in-process instance of the FastAPI app unless
--server points at a remote one; either way the CLI only builds request
bodies, ships CSV payloads to disk and turns error categories into exit
codes: 0 success, 1 usage, 2 numeric failure, 3 tolerance breach.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

import httpx

from .eigen import Spectrum
from .errors import ConfigurationError, DomainError
from .experiments import apply_overrides  # noqa: F401  (re-exported for config tooling)
from .experiments import config_from_mapping, parse_config_text

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_TOLERANCE = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 1 on usage problems, not argparse's 2
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="wignerlab", description=__doc__)
    parser.add_argument("--server", default=None, help="base URL of a running service; default runs in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="eigenvalues of one seeded Wigner matrix")
    p.add_argument("--dist", default="standard_normal")
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".")
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("figure", help="CSV data behind one of Figures 1-4")
    p.add_argument("--fig", type=int, required=True, choices=(1, 2, 3, 4))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=".")
    p.set_defaults(handler=_cmd_figure)

    p = sub.add_parser("convergence", help="distances to the semicircle law over sizes x replicates")
    p.add_argument("--config", default=None, help="key=value config file")
    p.add_argument("--dist", default=None)
    p.add_argument("--sizes", default=None, help="comma-separated, e.g. 50,200,800")
    p.add_argument("--kernel", default=None)
    p.add_argument("--bandwidth", default=None, help="'paper_default' or a number")
    p.add_argument("--grid", default=None, help="lo:hi:points")
    p.add_argument("--replicates", type=int, default=None)
    p.add_argument("--seed", type=int, default=None, help="base seed")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_convergence)

    p = sub.add_parser("identity-check", help="Cauchy-kernel vs Stieltjes identity sweep")
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dist", default="standard_normal")
    p.add_argument("--spectrum", default=None, help="run on eigenvalues from this CSV instead")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_identity)

    p = sub.add_parser("serve", help="run the HTTP service under uvicorn")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(handler=None)

    return parser


def _make_client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=None)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # starlette warns about its httpx shim
        from fastapi.testclient import TestClient  # in-process transport, no socket

    from .service import create_app

    return TestClient(create_app())


def _fail(resp) -> int:
    try:
        body = resp.json()
    except ValueError:
        body = {"detail": resp.text}
    detail = body.get("detail", "request failed")
    if isinstance(detail, list):  # pydantic validation report
        detail = "; ".join(f"{'.'.join(str(p) for p in e.get('loc', []))}: {e.get('msg')}" for e in detail)
    print(f"error: {detail}", file=sys.stderr)
    if resp.status_code == 422 or body.get("category") == "usage":
        return EXIT_USAGE
    return EXIT_NUMERIC


def _write(out_dir: str, name: str, text: str) -> Path:
    directory = Path(out_dir)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / name
    path.write_text(text)
    return path


def _cmd_spectrum(client, args) -> int:
    resp = client.post("/spectrum", json={"dist": args.dist, "n": args.n, "seed": args.seed})
    if resp.status_code != 200:
        return _fail(resp)
    payload = resp.json()
    path = _write(args.out, payload["name"], payload["csv"])
    print(path)
    return EXIT_OK


def _cmd_figure(client, args) -> int:
    resp = client.post("/figure", json={"fig": args.fig, "seed": args.seed})
    if resp.status_code != 200:
        return _fail(resp)
    payload = resp.json()
    path = _write(args.out, payload["name"], payload["csv"])
    print(path)
    return EXIT_OK


def _cmd_convergence(client, args) -> int:
    mapping: dict[str, str] = {}
    if args.config:
        try:
            mapping = parse_config_text(Path(args.config).read_text())
        except OSError as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return EXIT_USAGE
    overrides = {
        "dist": args.dist,
        "sizes": args.sizes,
        "kernel": args.kernel,
        "bandwidth": args.bandwidth,
        "grid": args.grid,
        "replicates": None if args.replicates is None else str(args.replicates),
        "base_seed": None if args.seed is None else str(args.seed),
        "out": args.out,
    }
    mapping.update({k: v for k, v in overrides.items() if v is not None})
    try:
        config = config_from_mapping(mapping)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    lo, hi, points = config.grid
    resp = client.post(
        "/convergence",
        json={
            "dist": config.distribution,
            "sizes": list(config.sizes),
            "kernel": config.kernel,
            "bandwidth": config.bandwidth,
            "grid_lo": lo,
            "grid_hi": hi,
            "grid_points": points,
            "replicates": config.replicates,
            "base_seed": config.base_seed,
        },
    )
    if resp.status_code != 200:
        return _fail(resp)
    payload = resp.json()
    path = _write(config.out_dir, payload["name"], payload["csv"])
    print(path)
    return EXIT_OK


def _cmd_identity(client, args) -> int:
    body = {"n": args.n, "seed": args.seed, "dist": args.dist}
    if args.spectrum:
        try:
            spec = Spectrum.from_csv(Path(args.spectrum).read_text())
        except OSError as exc:
            print(f"error: cannot read spectrum file: {exc}", file=sys.stderr)
            return EXIT_USAGE
        except DomainError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_USAGE
        body["eigenvalues"] = spec.eigenvalues.tolist()
    resp = client.post("/identity-check", json=body)
    if resp.status_code != 200:
        return _fail(resp)
    payload = resp.json()
    print(
        f"max |kde_cauchy - Im m / pi| = {payload['max_abs_difference']:.3e}"
        f" (tolerance {payload['tolerance']:.0e})"
    )
    if args.out:
        path = _write(args.out, payload["name"], payload["csv"])
        print(path)
    return EXIT_OK if payload["ok"] else EXIT_TOLERANCE


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "serve":
        import uvicorn

        from .service import create_app

        uvicorn.run(create_app(), host=args.host, port=args.port)
        return EXIT_OK
    try:
        with _make_client(args.server) as client:
            return args.handler(client, args)
    except httpx.HTTPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
