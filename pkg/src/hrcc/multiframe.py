"""51-multiframe layout for the SDCCH/8 and SDCCH/4 configurations.

The frame-number table follows the conventional arrangement: SDCCH
sub-channel k owns frames 4k..4k+3 of every multiframe, SACCH groups
follow with sub-channel ownership alternating between even and odd
multiframes, and the remainder of each multiframe is idle (for SDCCH/4
the idle span stands in for the unmodelled broadcast/common channels).

Modified mode keeps the same frame numbers and shares every 4-frame
group between two users: group-relative bursts 0 and 2 belong to the
EVEN sub-allocation, bursts 1 and 3 to the ODD one, which doubles the
number of logical channels.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .bits import SubAllocation

FRAMES_PER_MULTIFRAME = 51
GROUP_FRAMES = 4


class ChannelConfig(Enum):
    SDCCH8 = "sdcch8"
    SDCCH4 = "sdcch4"

    @property
    def subchannels(self) -> int:
        return 8 if self is ChannelConfig.SDCCH8 else 4


class FrameMode(Enum):
    STANDARD = "standard"
    MODIFIED = "modified"


class ChannelKind(Enum):
    SDCCH = "sdcch"
    SACCH = "sacch"


@dataclass(frozen=True)
class MultiframeConfig:
    config: ChannelConfig
    mode: FrameMode


@dataclass(frozen=True)
class LogicalChannelId:
    kind: ChannelKind
    subchannel: int
    suballoc: SubAllocation | None = None

    def validate(self, cfg: MultiframeConfig) -> None:
        if not 0 <= self.subchannel < cfg.config.subchannels:
            raise ValueError(
                f"{cfg.config.value} has sub-channels 0..{cfg.config.subchannels - 1}"
            )
        if cfg.mode is FrameMode.MODIFIED and self.suballoc is None:
            raise ValueError("modified mode requires a sub-allocation")
        if cfg.mode is FrameMode.STANDARD and self.suballoc is not None:
            raise ValueError("standard mode has no sub-allocations")


@dataclass(frozen=True)
class FrameSlot:
    """One frame of a two-multiframe cycle; parity 0 = even multiframe."""

    multiframe_parity: int
    frame_number: int
    owner: LogicalChannelId | None


def _group_table(config: ChannelConfig, parity: int) -> list[tuple[int, ChannelKind, int]]:
    """(first_frame, kind, subchannel) for every 4-frame group of one multiframe."""
    n = config.subchannels
    groups = [(GROUP_FRAMES * k, ChannelKind.SDCCH, k) for k in range(n)]
    sacch_base = GROUP_FRAMES * n
    half = n // 2
    for g in range(half):
        sub = g + half * parity
        groups.append((sacch_base + GROUP_FRAMES * g, ChannelKind.SACCH, sub))
    return groups


def build_layout(cfg: MultiframeConfig) -> list[FrameSlot]:
    """All 102 slots of a two-multiframe cycle, idle frames included."""
    slots: list[FrameSlot] = []
    for parity in (0, 1):
        owners: dict[int, LogicalChannelId] = {}
        for first, kind, sub in _group_table(cfg.config, parity):
            for r in range(GROUP_FRAMES):
                if cfg.mode is FrameMode.MODIFIED:
                    alloc = SubAllocation.EVEN if r % 2 == 0 else SubAllocation.ODD
                    owners[first + r] = LogicalChannelId(kind, sub, alloc)
                else:
                    owners[first + r] = LogicalChannelId(kind, sub)
        for frame in range(FRAMES_PER_MULTIFRAME):
            slots.append(FrameSlot(parity, frame, owners.get(frame)))
    return slots


def bursts_for(cfg: MultiframeConfig, chan: LogicalChannelId) -> list[tuple[int, int]]:
    """(cycle_frame, group_burst) pairs owned by ``chan`` in one cycle.

    Cycle frames count 0..101 across the two multiframes; the group burst
    index is the frame's position within its 4-frame group, so a modified
    EVEN channel sees bursts 0 and 2 and an ODD one sees 1 and 3.
    """
    chan.validate(cfg)
    out: list[tuple[int, int]] = []
    for slot in build_layout(cfg):
        if slot.owner != chan:
            continue
        group_burst = slot.frame_number % GROUP_FRAMES
        out.append((slot.multiframe_parity * FRAMES_PER_MULTIFRAME + slot.frame_number, group_burst))
    return out


@dataclass(frozen=True)
class CapacityReport:
    config: ChannelConfig
    mode: FrameMode
    sdcch_count: int
    sacch_count: int
    idle_frames: int

    def as_text(self) -> str:
        return "\n".join(
            [
                f"config={self.config.value}",
                f"mode={self.mode.value}",
                f"sdcch_count={self.sdcch_count}",
                f"sacch_count={self.sacch_count}",
                f"idle_frames={self.idle_frames}",
            ]
        )


def capacity_report(cfg: MultiframeConfig) -> CapacityReport:
    """Logical channel counts plus idle frames per multiframe."""
    slots = build_layout(cfg)
    sdcch = {s.owner for s in slots if s.owner and s.owner.kind is ChannelKind.SDCCH}
    sacch = {s.owner for s in slots if s.owner and s.owner.kind is ChannelKind.SACCH}
    idle = sum(1 for s in slots if s.multiframe_parity == 0 and s.owner is None)
    return CapacityReport(cfg.config, cfg.mode, len(sdcch), len(sacch), idle)
