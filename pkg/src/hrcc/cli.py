"""Command-line front end.

Commands: encode, decode, roundtrip, bler, capacity, msg, imsi.  Bit
blocks cross the boundary as "LEN:HEX" strings (pass "-" to read one from
stdin).  A flat key=value config file can pre-seed any flag; explicit
flags win.  Failures print the violated precondition on stderr and exit
nonzero instead of dumping a stack trace.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import interleaving, messages, multiframe, simulation
from .bits import HexFormatError, SubAllocation, from_hex, to_hex
from .multiframe import ChannelConfig, FrameMode, MultiframeConfig
from .schemes import SchemeId, decode_block, encode_block, message_bits, scheme_from_name
from .simulation import DEFAULT_MIN_ERRORS, DEFAULT_MIN_FRAMES, DEFAULT_SEED


class CliError(ValueError):
    pass


def parse_ebno_spec(spec: str) -> list[float]:
    """Operating points from "start:step:stop" or a comma list."""
    spec = spec.strip()
    if ":" in spec:
        parts = spec.split(":")
        if len(parts) != 3:
            raise CliError(f"range must be start:step:stop, got {spec!r}")
        start, step, stop = (float(p) for p in parts)
        if step <= 0:
            raise CliError("range step must be positive")
        if stop < start:
            raise CliError("range stop must not precede start")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return [start + i * step for i in range(count)]
    try:
        return [float(p) for p in spec.split(",") if p.strip()]
    except ValueError:
        raise CliError(f"bad Eb/N0 list {spec!r}") from None


def _read_block_arg(value: str) -> np.ndarray:
    if value == "-":
        value = sys.stdin.readline()
    return from_hex(value)


def _load_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                key, sep, value = line.partition("=")
                if not sep:
                    raise CliError(f"{path}:{lineno}: expected key=value")
                values[key.strip()] = value.strip()
    except OSError as exc:
        raise CliError(f"cannot read config file: {exc}") from None
    return values


def _merge_config(args: argparse.Namespace, file_values: dict[str, str]) -> None:
    """Fill unset flags from the config file (flags always win)."""
    converters = {
        "scheme": str,
        "ebno": str,
        "frames": int,
        "errors": int,
        "seed": int,
        "output": str,
        "msg": str,
        "block": str,
        "config": str,
        "mode": str,
        "value": str,
        "mnc_len": int,
        "m2m_mnc": str,
    }
    for key, raw in file_values.items():
        if key not in converters:
            raise CliError(f"unknown config key {key!r}")
        if getattr(args, key, None) is None and hasattr(args, key):
            setattr(args, key, converters[key](raw))


def _require(args: argparse.Namespace, *names: str) -> None:
    for name in names:
        if getattr(args, name) is None:
            raise CliError(f"missing required option --{name.replace('_', '-')}")


def _cmd_encode(args) -> int:
    _require(args, "scheme", "msg")
    scheme = scheme_from_name(args.scheme)
    msg = _read_block_arg(args.msg)
    print(to_hex(encode_block(scheme, msg)))
    return 0


def _cmd_decode(args) -> int:
    _require(args, "scheme", "block")
    scheme = scheme_from_name(args.scheme)
    hard = _read_block_arg(args.block)
    soft = (1.0 - 2.0 * hard.astype(np.float64)) * interleaving.HARD_DECISION_CONFIDENCE
    outcome = decode_block(scheme, soft)
    print(f"message={to_hex(outcome.message)}")
    print(f"integrity={'ok' if outcome.ok else 'corrupted'}")
    return 0


def _cmd_roundtrip(args) -> int:
    _require(args, "scheme")
    scheme = scheme_from_name(args.scheme)
    frames = args.frames if args.frames is not None else 1000
    seed = args.seed if args.seed is not None else DEFAULT_SEED
    if frames < 1:
        raise CliError("--frames must be at least 1")
    rng = np.random.default_rng(seed)
    mode = (
        interleaving.InterleaveMode.STD4
        if scheme is SchemeId.STANDARD_456
        else interleaving.InterleaveMode.MOD2
    )
    kbits = message_bits(scheme)
    errors = 0
    for _ in range(frames):
        msg = rng.integers(0, 2, size=kbits, dtype=np.uint8)
        subs = interleaving.interleave(mode, encode_block(scheme, msg))
        bursts = [interleaving.map_to_burst(sub) for sub in subs]
        soft = interleaving.deinterleave(mode, [interleaving.demap_burst(b) for b in bursts])
        outcome = decode_block(scheme, soft)
        if not outcome.ok or not np.array_equal(outcome.message, msg):
            errors += 1
    print(f"frames={frames}")
    print(f"errors={errors}")
    return 0 if errors == 0 else 1


def _cmd_bler(args) -> int:
    _require(args, "scheme", "ebno")
    scheme_list = [scheme_from_name(s.strip()) for s in args.scheme.split(",") if s.strip()]
    if not scheme_list:
        raise CliError("no schemes given")
    points = parse_ebno_spec(args.ebno)
    if not points:
        raise CliError("no Eb/N0 points given")
    reports = simulation.sweep(
        scheme_list,
        points,
        min_frames=args.frames if args.frames is not None else DEFAULT_MIN_FRAMES,
        min_errors=args.errors if args.errors is not None else DEFAULT_MIN_ERRORS,
        seed=args.seed if args.seed is not None else DEFAULT_SEED,
    )
    csv_text = simulation.reports_to_csv(reports)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(csv_text)
    else:
        sys.stdout.write(csv_text)
    return 0


def _cmd_capacity(args) -> int:
    _require(args, "config", "mode")
    try:
        cfg = MultiframeConfig(ChannelConfig(args.config), FrameMode(args.mode))
    except ValueError:
        raise CliError(
            f"config must be one of sdcch8/sdcch4 and mode standard/modified, "
            f"got {args.config!r}/{args.mode!r}"
        ) from None
    print(multiframe.capacity_report(cfg).as_text())
    return 0


def _parse_fields(pairs: list[str]) -> dict[str, str]:
    fields = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep:
            raise CliError(f"fields must be key=value, got {pair!r}")
        fields[key.strip()] = value.strip()
    return fields


def _field_int(fields: dict[str, str], name: str) -> int:
    if name not in fields:
        raise CliError(f"missing field {name}=")
    try:
        return int(fields[name], 0)
    except ValueError:
        raise CliError(f"field {name} must be an integer, got {fields[name]!r}") from None


def _cmd_msg(args) -> int:
    if args.op == "encode":
        fields = _parse_fields(args.fields)
        if args.type == "assignment":
            suballoc = fields.get("suballoc", "")
            try:
                alloc = SubAllocation(suballoc)
            except ValueError:
                raise CliError("field suballoc must be 'even' or 'odd'") from None
            assignment = messages.ChannelAssignment(
                channel_type=_field_int(fields, "channel_type"),
                timeslot=_field_int(fields, "timeslot"),
                training_seq=_field_int(fields, "training_seq"),
                arfcn=_field_int(fields, "arfcn"),
                suballoc=alloc,
            )
            print(to_hex(messages.encode_immediate_assignment(assignment)))
        else:
            payload_hex = fields.get("payload", "")
            try:
                payload = bytes.fromhex(payload_hex)
            except ValueError:
                raise CliError(f"field payload must be hex octets, got {payload_hex!r}") from None
            frame = messages.encode_lapdm_tailored(
                payload,
                address=_field_int(fields, "address"),
                control=_field_int(fields, "control"),
            )
            print(to_hex(frame))
        return 0
    _require(args, "block")
    block = _read_block_arg(args.block)
    if args.type == "assignment":
        a = messages.decode_immediate_assignment(block)
        print(f"channel_type={a.channel_type}")
        print(f"timeslot={a.timeslot}")
        print(f"training_seq={a.training_seq}")
        print(f"arfcn={a.arfcn}")
        print(f"suballoc={a.suballoc.value}")
    else:
        payload, address, control = messages.decode_lapdm_tailored(block)
        print(f"address={address}")
        print(f"control={control}")
        print(f"payload={payload.hex().upper()}")
    return 0


def _cmd_imsi(args) -> int:
    _require(args, "value")
    mnc_len = args.mnc_len if args.mnc_len is not None else 3
    imsi = messages.parse_imsi(args.value, mnc_len)
    m2m = {m.strip() for m in (args.m2m_mnc or "").split(",") if m.strip()}
    capable = messages.is_halfrate_capable(imsi, m2m)
    print(f"mcc={imsi.mcc}")
    print(f"mnc={imsi.mnc}")
    print(f"msin={imsi.msin}")
    print(f"class={'m2m_halfrate_capable' if capable else 'ordinary'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hrcc",
        description="Half-rate control-channel codecs, capacity reports and AWGN sweeps.",
    )
    parser.add_argument("--config-file", help="flat key=value file supplying default flags")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="encode a message block for a scheme")
    p.add_argument("--scheme")
    p.add_argument("--msg", help='"LEN:HEX" message block, or - for stdin')
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("decode", help="decode a hard-bit coded block")
    p.add_argument("--scheme")
    p.add_argument("--block", help='"LEN:HEX" coded block, or - for stdin')
    p.set_defaults(func=_cmd_decode)

    p = sub.add_parser("roundtrip", help="zero-noise encode/interleave/decode identity check")
    p.add_argument("--scheme")
    p.add_argument("--frames", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=_cmd_roundtrip)

    p = sub.add_parser("bler", help="Monte Carlo AWGN sweep, CSV output")
    p.add_argument("--scheme", help="comma-separated scheme names")
    p.add_argument("--ebno", help="Eb/N0 points: start:step:stop or comma list")
    p.add_argument("--frames", type=int, help=f"frame floor per point (default {DEFAULT_MIN_FRAMES})")
    p.add_argument("--errors", type=int, help=f"early-stop error count (default {DEFAULT_MIN_ERRORS})")
    p.add_argument("--seed", type=int, help=f"master seed (default {DEFAULT_SEED})")
    p.add_argument("--output", help="write CSV here instead of stdout")
    p.set_defaults(func=_cmd_bler)

    p = sub.add_parser("capacity", help="multiframe logical-channel report")
    p.add_argument("--config", help="sdcch8 or sdcch4")
    p.add_argument("--mode", help="standard or modified")
    p.set_defaults(func=_cmd_capacity)

    p = sub.add_parser("msg", help="signaling message codecs")
    p.add_argument("op", choices=("encode", "decode"))
    p.add_argument("--type", required=True, choices=("assignment", "lapdm"))
    p.add_argument("--block", help='"LEN:HEX" image to decode, or - for stdin')
    p.add_argument("--fields", nargs="*", default=[], help="key=value fields for encoding")
    p.set_defaults(func=_cmd_msg)

    p = sub.add_parser("imsi", help="split an IMSI and classify the terminal")
    p.add_argument("--value", help="15-digit IMSI")
    p.add_argument("--mnc-len", dest="mnc_len", type=int, choices=(2, 3))
    p.add_argument("--m2m-mnc", dest="m2m_mnc", help="comma-separated half-rate capable MNCs")
    p.set_defaults(func=_cmd_imsi)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config_file:
            _merge_config(args, _load_config_file(args.config_file))
        return args.func(args)
    except (CliError, HexFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
