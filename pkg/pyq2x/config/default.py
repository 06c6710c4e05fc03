config = dict(
    loglevel="warning",
    extra_loglevel=None,

    # Accuracy experiment geometry and error model
    rt=0.1,
    bound_constant=0.1,
    envelope_margin=5.0,
    double_layer_margin=20.0,
    roundoff_floor=1e-9,

    # Recursion-vs-quadrature agreement
    recursion_tolerance=1e-12,

    workers=1,
    csv_digits=17,

    check_p_max=10,
    check_count=100,
    bench_reps=5,
)
