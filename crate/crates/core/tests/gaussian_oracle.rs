use qfoundry::gaussian::{
    bombelli_entropy, chain_scan, fock_oracle_entropy, ground_state_w, log_slope, three_oscillator_ring,
    two_oscillators, Boundary, FockOptions, TracedRegion,
};

#[test]
fn closed_form_matches_number_basis_across_couplings() {
    let opts = FockOptions::default();
    for step in 1..=9 {
        let eps = 0.1 * step as f64;
        for (v, traced) in [(two_oscillators(1.0, eps), vec![1]), (three_oscillator_ring(1.0, eps), vec![2])] {
            let model = ground_state_w(&v).unwrap();
            let region = TracedRegion::new(traced, model.size()).unwrap();
            let exact = bombelli_entropy(&model, &region).unwrap();
            let fock = fock_oracle_entropy(&model, &region, &opts).unwrap();
            assert!((exact - fock.entropy).abs() < 1e-6, "eps={eps} n={} exact={exact} fock={fock:?}", model.size());
        }
    }
}

#[test]
fn critical_ring_log_slope() {
    let sizes: Vec<usize> = (0..=50).collect();
    let curve = chain_scan(1e-6, 200, &sizes, Boundary::Periodic).unwrap();
    let slope = log_slope(&curve, 4, 50).unwrap();
    assert!((slope - 1.0 / 3.0).abs() < 0.1 / 3.0, "slope {slope}");
}
