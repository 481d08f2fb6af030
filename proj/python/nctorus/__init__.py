from ._nctcore import (  # noqa: F401
    __version__,
    curvature,
    gauss_bonnet,
    modfun_eval,
    modfun_names,
    modfun_verify,
    parse_roundtrip,
    run_suite,
    stage_text,
    suite_names,
)
