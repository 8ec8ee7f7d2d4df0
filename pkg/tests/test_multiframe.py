import itertools

import pytest

from hrcc.bits import SubAllocation
from hrcc.multiframe import (
    ChannelConfig,
    ChannelKind,
    FrameMode,
    LogicalChannelId,
    MultiframeConfig,
    build_layout,
    bursts_for,
    capacity_report,
)


def _all_channels(cfg: MultiframeConfig):
    allocs = [None] if cfg.mode is FrameMode.STANDARD else list(SubAllocation)
    for kind in ChannelKind:
        for sub in range(cfg.config.subchannels):
            for alloc in allocs:
                yield LogicalChannelId(kind, sub, alloc)


def test_sdcch8_standard_frame_budget():
    cfg = MultiframeConfig(ChannelConfig.SDCCH8, FrameMode.STANDARD)
    slots = [s for s in build_layout(cfg) if s.multiframe_parity == 0]
    assert len(slots) == 51
    sdcch = [s for s in slots if s.owner and s.owner.kind is ChannelKind.SDCCH]
    sacch = [s for s in slots if s.owner and s.owner.kind is ChannelKind.SACCH]
    idle = [s for s in slots if s.owner is None]
    assert (len(sdcch), len(sacch), len(idle)) == (32, 16, 3)  # 8*4 + 4*4 + 3 == 51


def test_layout_covers_two_multiframes():
    for config, mode in itertools.product(ChannelConfig, FrameMode):
        slots = build_layout(MultiframeConfig(config, mode))
        assert len(slots) == 102
        assert {(s.multiframe_parity, s.frame_number) for s in slots} == {
            (p, f) for p in (0, 1) for f in range(51)
        }


def test_sdcch_subchannels_own_four_consecutive_frames_per_multiframe():
    cfg = MultiframeConfig(ChannelConfig.SDCCH8, FrameMode.STANDARD)
    for sub in range(8):
        chan = LogicalChannelId(ChannelKind.SDCCH, sub)
        frames = [f for f, _ in bursts_for(cfg, chan)]
        assert frames == [4 * sub + r for r in range(4)] + [51 + 4 * sub + r for r in range(4)]


def test_sacch_alternates_by_multiframe_parity():
    cfg = MultiframeConfig(ChannelConfig.SDCCH8, FrameMode.STANDARD)
    low = bursts_for(cfg, LogicalChannelId(ChannelKind.SACCH, 0))
    high = bursts_for(cfg, LogicalChannelId(ChannelKind.SACCH, 4))
    assert [f for f, _ in low] == [32, 33, 34, 35]  # even multiframe only
    assert [f for f, _ in high] == [51 + 32, 51 + 33, 51 + 34, 51 + 35]  # odd only


def test_standard_control_frames_use_all_four_bursts():
    cfg = MultiframeConfig(ChannelConfig.SDCCH4, FrameMode.STANDARD)
    pairs = bursts_for(cfg, LogicalChannelId(ChannelKind.SDCCH, 2))
    assert [b for _, b in pairs] == [0, 1, 2, 3, 0, 1, 2, 3]


def test_modified_suballocations_split_each_group():
    cfg = MultiframeConfig(ChannelConfig.SDCCH8, FrameMode.MODIFIED)
    even = bursts_for(cfg, LogicalChannelId(ChannelKind.SDCCH, 3, SubAllocation.EVEN))
    odd = bursts_for(cfg, LogicalChannelId(ChannelKind.SDCCH, 3, SubAllocation.ODD))
    assert [b for _, b in even] == [0, 2, 0, 2]
    assert [b for _, b in odd] == [1, 3, 1, 3]
    # the two users share the group without collisions and cover it fully
    assert not set(even) & set(odd)
    group_frames = {f for f, _ in even} | {f for f, _ in odd}
    assert group_frames == {12, 13, 14, 15, 63, 64, 65, 66}


def test_no_frame_is_owned_twice_and_channels_get_whole_control_frames():
    for config, mode in itertools.product(ChannelConfig, FrameMode):
        cfg = MultiframeConfig(config, mode)
        seen = {}
        per_frame_bursts = 4 if mode is FrameMode.STANDARD else 2
        for chan in _all_channels(cfg):
            pairs = bursts_for(cfg, chan)
            assert len(pairs) % per_frame_bursts == 0
            for key in pairs:
                assert key not in seen, f"{key} owned by {seen.get(key)} and {chan}"
                seen[key] = chan
        owned = sum(1 for s in build_layout(cfg) if s.owner is not None)
        assert len(seen) == owned


@pytest.mark.parametrize(
    "config,standard_count",
    [(ChannelConfig.SDCCH8, 8), (ChannelConfig.SDCCH4, 4)],
)
def test_capacity_doubles_in_modified_mode(config, standard_count):
    std = capacity_report(MultiframeConfig(config, FrameMode.STANDARD))
    mod = capacity_report(MultiframeConfig(config, FrameMode.MODIFIED))
    assert std.sdcch_count == standard_count
    assert std.sacch_count == standard_count
    assert mod.sdcch_count == 2 * standard_count
    assert mod.sacch_count == 2 * standard_count
    assert std.idle_frames == mod.idle_frames


def test_capacity_report_text_contract():
    text = capacity_report(
        MultiframeConfig(ChannelConfig.SDCCH8, FrameMode.MODIFIED)
    ).as_text()
    assert "sdcch_count=16" in text
    assert "sacch_count=16" in text
    assert "idle_frames=3" in text


def test_channel_validation():
    cfg = MultiframeConfig(ChannelConfig.SDCCH4, FrameMode.STANDARD)
    with pytest.raises(ValueError):
        bursts_for(cfg, LogicalChannelId(ChannelKind.SDCCH, 4))
    with pytest.raises(ValueError):
        bursts_for(cfg, LogicalChannelId(ChannelKind.SDCCH, 0, SubAllocation.EVEN))
    modified = MultiframeConfig(ChannelConfig.SDCCH4, FrameMode.MODIFIED)
    with pytest.raises(ValueError):
        bursts_for(modified, LogicalChannelId(ChannelKind.SDCCH, 0))
