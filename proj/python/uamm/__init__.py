"""Uniformly accelerated motion model for block-based inter prediction."""

from ._uamm import (
    MV_MAX,
    PREC,
    ModelKind,
    MotionField,
    MotionVector,
    UammError,
    UammOverflowError,
    UammParams,
    bd_rate,
    correct_mvs,
    derive_field_params,
    derive_params,
    displacement,
    extrapolate_mv,
    full_search_me,
    inherit_params,
    main,
    motion_compensate,
    predict_uamm,
    predict_uniform,
    psnr,
    read_yuv,
    run_experiment_csv,
    synth_sequence,
    tmvp_scale,
    velocity_at,
    write_yuv,
)

__all__ = [name for name in dir() if not name.startswith("_")]
