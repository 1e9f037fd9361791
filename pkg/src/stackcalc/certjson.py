"""JSON form of certificates: frames as surface text, outside-in."""

from __future__ import annotations

import json

from .context import ApplyStack, Bind, Certificate, HeadContext
from .surface import parse_stack, show
from .syntax import VarName

VERSION = 1


def to_dict(cert: Certificate) -> dict:
    frames = []
    for fr in cert.context.frames:
        if isinstance(fr, Bind):
            frames.append({"bind": str(fr.alpha)})
        else:
            frames.append({"apply": show(fr.pi)})
    return {
        "version": VERSION,
        "context": frames,
        "caseLog": list(cert.case_path),
        "fuel": cert.fuel_used,
        "targets": {"left": cert.left_target, "right": cert.right_target},
    }


def from_dict(data: dict) -> Certificate:
    if data.get("version") != VERSION:
        raise ValueError(f"unsupported certificate version {data.get('version')!r}")
    frames = []
    for fr in data["context"]:
        if "bind" in fr:
            frames.append(Bind(VarName.parse(fr["bind"])))
        else:
            frames.append(ApplyStack(parse_stack(fr["apply"])))
    targets = data["targets"]
    return Certificate(HeadContext(tuple(frames)), targets["left"], targets["right"],
                       int(data.get("fuel", 0)), list(data.get("caseLog", [])))


def dumps(cert: Certificate) -> str:
    return json.dumps(to_dict(cert), indent=2)


def loads(text: str) -> Certificate:
    return from_dict(json.loads(text))
