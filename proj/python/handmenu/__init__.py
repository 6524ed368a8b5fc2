"""Gesture-driven virtual menu for media player control."""

import json as _json

from ._core import (  # noqa: F401
    Blob,
    ConfigError,
    FormatError,
    Frame,
    HsvRange,
    MenuModel,
    MenuRegion,
    Pipeline,
    PipelineConfig,
    ProtocolError,
    SourceError,
    TransportError,
    box_blur,
    decode_command,
    default_menu,
    encode_command,
    filter_blobs,
    hit_test,
    label_components,
    largest_blob,
    rgb_to_hsv,
    run_bench,
    synthetic_frames,
    threshold_hsv,
)


def process_frame(pipeline, frame):
    """Run one frame; returns (snapshot dict, overlay Frame, selected actions)."""
    snapshot, overlay, selections = pipeline.process(frame)
    return _json.loads(snapshot), overlay, selections
