"""Thin command-line client for the service.

`digitfract run JOB.json` validates the job file, sends it to the service
(in process by default, or to a remote `--server URL`) and writes the
report in the configured format.  `digitfract serve` starts the HTTP
service.

Exit codes: 0 ok, 2 validation error, 3 budget/horizon/run-not-found,
1 anything else.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

import httpx
from pydantic import ValidationError

from . import reports
from .config import ROUTES, JobConfig, PARAMS_MODELS
from .errors import (EXIT_INTERNAL, EXIT_OK, EXIT_VALIDATION, exit_code_for)

#: params fields that accept the global budget override, per command
_BUDGET_KEYS = {
    "enumerate": "budget",
    "ap search": "budget",
    "ap longest": "budget",
    "fourier scan": "block_budget",
}


def _load_config(path: str) -> JobConfig:
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    return JobConfig.model_validate(raw)


def _apply_overrides(config: JobConfig, args) -> JobConfig:
    update = {}
    if args.format:
        update["format"] = args.format
    if args.out:
        update["path"] = args.out
    if update:
        config = config.model_copy(
            update={"output": config.output.model_copy(update=update)})
    if args.budget is not None:
        params = dict(config.params)
        key = _BUDGET_KEYS.get(config.command)
        if key is not None and params.get(key) is None:
            params[key] = args.budget
        source = params.get("source")
        if isinstance(source, dict) and source.get("kind") == "enumeration" \
                and source.get("budget") is None:
            source = dict(source)
            source["budget"] = args.budget
            params["source"] = source
        config = config.model_copy(update={"params": params})
    return config


def _request_body(config: JobConfig) -> dict:
    # validate params against the command's schema before sending
    params_model = PARAMS_MODELS[config.command]
    params = params_model.model_validate(config.params)
    body: dict = {"params": params.model_dump(mode="json")}
    if config.system is not None:
        body["system"] = config.system.model_dump(mode="json")
    if config.positions is not None:
        body["positions"] = config.positions.model_dump(mode="json")
    return body


def _post(config: JobConfig, body: dict, server: Optional[str]):
    route = ROUTES[config.command]
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            return client.post(route, json=body)
    import warnings
    with warnings.catch_warnings():
        # this starlette build warns about its own TestClient import
        warnings.filterwarnings(
            "ignore", message="Using `httpx` with `starlette.testclient`")
        from fastapi.testclient import TestClient

        from .service import app
        with TestClient(app, raise_server_exceptions=False) as client:
            return client.post(route, json=body)


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _error_exit(response) -> int:
    try:
        payload = response.json()
    except ValueError:
        payload = {"error": {"kind": "internal", "message": response.text}}
    if "error" in payload:
        err = payload["error"]
        sys.stderr.write(json.dumps({"error": err}, sort_keys=True) + "\n")
        return exit_code_for(err.get("kind", "internal"))
    # request-schema rejections arrive as FastAPI's `detail` list
    sys.stderr.write(json.dumps(payload, sort_keys=True, default=str) + "\n")
    return EXIT_VALIDATION if response.status_code == 422 else EXIT_INTERNAL


def run_job(args) -> int:
    try:
        config = _load_config(args.config)
        config = _apply_overrides(config, args)
        body = _request_body(config)
    except (OSError, json.JSONDecodeError, ValidationError, ValueError) as exc:
        sys.stderr.write(f"invalid job config: {exc}\n")
        return EXIT_VALIDATION
    try:
        response = _post(config, body, args.server)
    except httpx.HTTPError as exc:
        sys.stderr.write(f"request failed: {exc}\n")
        return EXIT_INTERNAL
    if response.status_code != 200:
        return _error_exit(response)
    report = reports.parse_report(response.text)
    if config.output.format == "csv":
        _emit(reports.to_csv(report), config.output.path)
    else:
        _emit(reports.to_json(report), config.output.path)
    return EXIT_OK


def serve(args) -> int:
    import uvicorn
    uvicorn.run("digitfract.service:app", host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="digitfract",
        description="Digit-restriction fractal toolkit (client for the "
                    "digitfract service)")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    run_p = sub.add_parser("run", help="execute one job file")
    run_p.add_argument("config", help="path to the JSON job file")
    run_p.add_argument("--format", choices=["json", "csv"],
                       help="override the job file's output format")
    run_p.add_argument("--out", help="override the job file's output path")
    run_p.add_argument("--server",
                       help="base URL of a running service; default runs "
                            "the service in process")
    run_p.add_argument("--budget", type=int,
                       help="override enumeration/search budgets")
    run_p.set_defaults(func=run_job)

    serve_p = sub.add_parser("serve", help="start the HTTP service")
    serve_p.add_argument("--host", default="127.0.0.1")
    serve_p.add_argument("--port", type=int, default=8000)
    serve_p.set_defaults(func=serve)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
