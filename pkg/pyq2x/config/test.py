config = dict(
    loglevel="error",
    check_count=10,
    bench_reps=3,
)
