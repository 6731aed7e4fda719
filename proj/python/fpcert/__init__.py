from ._fpcert import (  # noqa: F401
    analyze,
    benchmark_names,
    benchmark_source,
    ex_family_source,
    run_benchmarks,
    MethodInapplicableError,
    ProgramParseError,
)
