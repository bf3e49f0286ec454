"""Command-line front end.

Subcommands: extract, conform, popularity, phantom-check, mesh-export.
Exit codes: 0 success, 2 input error (missing or malformed data files),
3 configuration error (bad flags or config values).

A config file of `key = value` lines (keys = long option names with
underscores, `#` comments) can seed any option; command-line flags
override the file.
"""

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from . import __version__
from .conformance import (BenchmarkTable, GlossaryMap, conformance_report,
                          map_aliases, read_feature_csv)
from .manifest import RunManifest
from .morphology import marching_cubes, save_obj
from .popularity import (ClassTotals, SupportMatrix, intersection_counts,
                         popularity_p1, popularity_p2)
from .preprocess import (ONE_BASED, ZERO_BASED, DiscretizationSpec,
                         InterpolationSpec)
from .registry import CLASS_ORDER, FeatureSet
from .volume import RoiMask, VolumeError, check_phantom, load_mask, load_volume
from .features import extract_all

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFIG = 3


class ConfigError(Exception):
    """Bad flag or config-file value."""


def _read_config(path):
    values = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key = value")
        key, val = (part.strip() for part in line.split("=", 1))
        values[key.replace("-", "_")] = val
    return values


def _parse_discretize(text):
    try:
        method, _, arg = text.partition(":")
        if method == "fbn":
            return {"method": "fbn", "n_bins": int(arg)}
        if method == "fbs":
            return {"method": "fbs", "bin_width": float(arg)}
    except ValueError:
        pass
    raise ConfigError(f"--discretize must be fbn:<bins> or fbs:<width>, got {text!r}")


def _parse_spacing(text):
    parts = text.split(",")
    if len(parts) != 3:
        raise ConfigError(f"--resample needs sx,sy,sz, got {text!r}")
    try:
        spacing = tuple(float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"--resample needs numbers: {exc}") from exc
    if min(spacing) <= 0:
        raise ConfigError("--resample spacing must be positive")
    return spacing


def _csv_value(value):
    if isinstance(value, float) and math.isnan(value):
        return "nan"
    return repr(float(value))


def write_feature_csv(fs: FeatureSet, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["feature_id", "class", "value", "flag"])
        for v in fs.values:
            writer.writerow([v.id, v.cls, _csv_value(v.value), v.flag])


def write_feature_json(fs: FeatureSet, path):
    rows = []
    for v in fs.values:
        val = v.value if math.isfinite(v.value) else None
        rows.append({"id": v.id, "class": v.cls, "value": val, "flag": v.flag})
    body = {"features": rows, "provenance": fs.provenance}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(body, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _add_extract_options(sub):
    sub.add_argument("--image", required=True)
    sub.add_argument("--mask", required=True)
    sub.add_argument("--format", default=None, choices=["json+raw", "csv-slices"])
    sub.add_argument("--out", default=".", help="output directory")
    sub.add_argument("--config", default=None)
    sub.add_argument("--discretize", default="fbs:1")
    sub.add_argument("--shift-mode", dest="shift_mode", default=ONE_BASED,
                     choices=[ONE_BASED, ZERO_BASED])
    sub.add_argument("--resample", default=None, metavar="SX,SY,SZ")
    sub.add_argument("--kernel", default="trilinear",
                     choices=["nearest", "trilinear"])
    sub.add_argument("--aggregation", default="merge",
                     choices=["merge", "average"])
    sub.add_argument("--ngldm-alpha", dest="ngldm_alpha", type=float, default=0.0)
    sub.add_argument("--distance", type=int, default=1)
    sub.add_argument("--classes", default=None,
                     help="comma-separated feature classes (default: all)")
    sub.add_argument("--export-mesh", dest="export_mesh", default=None,
                     metavar="PATH.obj")


def build_parser():
    parser = argparse.ArgumentParser(prog="radquant",
                                     description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"radquant {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    _add_extract_options(subs.add_parser(
        "extract", help="compute features from a volume and ROI mask"))

    conform = subs.add_parser(
        "conform", help="score feature CSVs against a benchmark table")
    conform.add_argument("--features", nargs="+", default=[],
                         help="feature CSVs produced by extract")
    conform.add_argument("--external", default=None,
                         help="external source,feature_name,value CSV")
    conform.add_argument("--glossary", default=None,
                         help="canonical_id,source,alias[,scale,offset] CSV")
    conform.add_argument("--benchmark", required=True)
    conform.add_argument("--match-tol", dest="match_tol", type=float, default=1e-3)
    conform.add_argument("--close-tol", dest="close_tol", type=float, default=5e-2)
    conform.add_argument("--out", default=".", help="output directory")

    pop = subs.add_parser(
        "popularity", help="coverage metrics from a support matrix CSV")
    pop.add_argument("--matrix", required=True)
    pop.add_argument("--category", default=None)
    pop.add_argument("--out", default=None, help="output JSON path (default stdout)")

    check = subs.add_parser(
        "phantom-check", help="validate the benchmark phantom files")
    check.add_argument("--image", required=True)
    check.add_argument("--mask", required=True)
    check.add_argument("--format", default=None, choices=["json+raw", "csv-slices"])

    mesh = subs.add_parser(
        "mesh-export", help="write the ROI surface mesh as Wavefront OBJ")
    mesh.add_argument("--mask", required=True)
    mesh.add_argument("--image", default=None,
                      help="volume whose grid the mask lives on (optional)")
    mesh.add_argument("--format", default=None, choices=["json+raw", "csv-slices"])
    mesh.add_argument("--out", required=True, metavar="PATH.obj")
    return parser


def _apply_config(args):
    if getattr(args, "config", None) is None:
        return args
    overrides = _read_config(args.config)
    given = getattr(args, "argv", sys.argv)
    cli_given = {a.split("=", 1)[0].lstrip("-").replace("-", "_")
                 for a in given if a.startswith("--")}
    for key, val in overrides.items():
        if not hasattr(args, key):
            raise ConfigError(f"unknown config key {key!r}")
        if key in cli_given:
            continue  # explicit flag wins
        current = getattr(args, key)
        if isinstance(current, bool):
            setattr(args, key, val.lower() in ("1", "true", "yes"))
        elif isinstance(current, int) and not isinstance(current, bool):
            setattr(args, key, int(val))
        elif isinstance(current, float):
            setattr(args, key, float(val))
        else:
            setattr(args, key, val)
    return args


def cmd_extract(args):
    args = _apply_config(args)
    disc_kwargs = _parse_discretize(args.discretize)
    try:
        spec = DiscretizationSpec(shift_mode=args.shift_mode, **disc_kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    interp = None
    if args.resample is not None:
        interp = InterpolationSpec(_parse_spacing(args.resample), args.kernel)
    classes = None
    if args.classes is not None:
        classes = [c.strip() for c in args.classes.split(",") if c.strip()]
        unknown = [c for c in classes if c not in CLASS_ORDER]
        if unknown:
            raise ConfigError(f"unknown feature classes: {unknown}")
    if args.distance < 1:
        raise ConfigError("--distance must be >= 1")
    if args.ngldm_alpha < 0:
        raise ConfigError("--ngldm-alpha must be >= 0")

    fmt = args.format
    volume = load_volume(args.image, fmt)
    mask = load_mask(args.mask, volume, fmt)

    mesh = None
    if args.export_mesh is not None:
        mesh = marching_cubes(mask.flags, volume.spacing)
    fs = extract_all(volume, mask, spec, interp_spec=interp,
                     aggregation=args.aggregation,
                     ngldm_alpha=args.ngldm_alpha,
                     distance=args.distance, classes=classes, mesh=mesh)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_feature_csv(fs, out_dir / "features.csv")
    write_feature_json(fs, out_dir / "features.json")
    manifest = RunManifest(
        inputs=RunManifest.digest_inputs({"image": args.image, "mask": args.mask}),
        discretization=spec, interpolation=interp,
        aggregation=args.aggregation, ngldm_alpha=args.ngldm_alpha,
        distance=args.distance)
    manifest.write(out_dir / "manifest.json")
    if args.export_mesh is not None:
        save_obj(mesh, args.export_mesh)
    print(f"wrote {len(fs)} features to {out_dir / 'features.csv'}")
    return EXIT_OK


def cmd_conform(args):
    if not args.features and args.external is None:
        raise ConfigError("conform needs --features and/or --external")
    if args.external is not None and args.glossary is None:
        raise ConfigError("--external requires --glossary")
    if not (0.0 < args.match_tol < args.close_tol):
        raise ConfigError("tolerances must satisfy 0 < match < close")
    sets = {}
    for path in args.features:
        sets[Path(path).stem] = read_feature_csv(path)
    unmapped = []
    if args.external is not None:
        glossary = GlossaryMap.from_csv(args.glossary)
        mapped, unmapped = map_aliases(args.external, glossary)
        for source, fs in mapped.items():
            if source in sets:
                raise ValueError(f"duplicate source name {source!r}")
            sets[source] = fs
    benchmarks = BenchmarkTable.from_csv(args.benchmark)
    report = conformance_report(sets, benchmarks,
                                match_tol=args.match_tol,
                                close_tol=args.close_tol)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    body = report.to_json_dict()
    body["unmapped"] = unmapped
    with open(out_dir / "report.json", "w", encoding="utf-8") as fh:
        json.dump(body, fh, indent=2, sort_keys=True)
        fh.write("\n")
    report.write_csv(out_dir / "report.csv")
    for source, counts in sorted(report.tier_counts().items()):
        line = ", ".join(f"{t}={counts[t]}" for t in ("match", "close", "divergent", "missing"))
        print(f"{source}: {line}")
    return EXIT_OK


def _load_support(path):
    with open(path, newline="", encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
    if header[:2] == ["feature_id", "category"]:
        return SupportMatrix.from_csv(path)
    if header[:3] == ["class", "category", "n_features"]:
        return ClassTotals.from_csv(path)
    raise ValueError("unrecognized support matrix header")


def cmd_popularity(args):
    matrix = _load_support(args.matrix)
    try:
        if isinstance(matrix, SupportMatrix):
            body = {
                "p1": popularity_p1(matrix, args.category),
                "p2": popularity_p2(matrix, args.category),
            }
            body.update(intersection_counts(matrix))
        else:
            categories = ([args.category] if args.category
                          else sorted(set(matrix.categories)))
            body = {"p1": {cat: popularity_p1(matrix, cat) for cat in categories},
                    "p2": None,
                    "note": "per-feature matrix required for P2 and intersections"}
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    text = json.dumps(body, indent=2, sort_keys=True) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    return EXIT_OK


def cmd_phantom_check(args):
    volume = load_volume(args.image, args.format)
    mask = load_mask(args.mask, volume, args.format)
    report = check_phantom(volume, mask)
    checks = [
        ("dims", report.dims_ok),
        ("spacing", report.spacing_ok),
        ("whole-volume intensity range", report.whole_range_ok),
        ("ROI intensity range", report.roi_range_ok),
        ("absent levels", report.absent_levels_ok),
    ]
    for name, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'} {name}")
    if not report.all_ok:
        return EXIT_INPUT
    print("phantom OK")
    return EXIT_OK


def cmd_mesh_export(args):
    if args.image is not None:
        volume = load_volume(args.image, args.format)
        mask = load_mask(args.mask, volume, args.format)
        spacing = volume.spacing
    else:
        carrier = load_volume(args.mask, args.format)
        mask = RoiMask(carrier.dims, carrier.values != 0)
        spacing = carrier.spacing
    mesh = marching_cubes(mask.flags, spacing)
    save_obj(mesh, args.out)
    print(f"wrote {mesh.n_vertices} vertices / {mesh.n_faces} faces to {args.out}")
    return EXIT_OK


_COMMANDS = {
    "extract": cmd_extract,
    "conform": cmd_conform,
    "popularity": cmd_popularity,
    "phantom-check": cmd_phantom_check,
    "mesh-export": cmd_mesh_export,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = list(sys.argv[1:] if argv is None else argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (VolumeError, OSError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
