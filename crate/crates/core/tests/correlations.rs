use strict_dpp::dpp::{estimate_correlation, SampleBatch};
use strict_dpp::ensemble::{LEnsemble, PointConfiguration, WeightFunction};
use strict_dpp::numerics::dense_determinant;
use strict_dpp::partitions::Mixing;
use strict_dpp::{ModelParams, PlancherelParams, TOLERANCES};

/// Exact partition samples against `det K_X` for one- and two-point sets.
fn check(mixing: Mixing, psi: WeightFunction, seed: u64) {
    let ensemble = LEnsemble::with_adaptive_window(psi).unwrap();
    let k = ensemble.kernel().unwrap();
    let batch = SampleBatch::from_measure(mixing, TOLERANCES.enumeration_cap, 40_000, seed).unwrap();
    for sites in [vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3]] {
        let x = PointConfiguration::new(sites).unwrap();
        let expected = dense_determinant(&k.minor(&x.indices()));
        let est = estimate_correlation(&batch, &x).unwrap();
        assert!(est.z_score(expected) < 4.5, "{:?}: {} +- {} vs {expected}", x.sites(), est.estimate, est.std_error);
    }
}

#[test]
fn partition_samples_match_kernel_minors() {
    let p = ModelParams::new(1.0, 0.4).unwrap();
    check(Mixing::from(p), WeightFunction::NuXi(p), 11);
    let t = PlancherelParams::new(1.5).unwrap();
    check(Mixing::from(t), WeightFunction::Theta(t), 12);
}

#[test]
fn kernel_samples_reproduce_two_point_functions() {
    use strict_dpp::kernels::{IntegrableVariant, KernelFamily, KernelParams, KernelSpec};

    let p = ModelParams::new(1.0, 0.8).unwrap();
    let window = WeightFunction::NuXi(p).window(TOLERANCES.window_tail).unwrap() as usize;
    let spec = KernelSpec::new(KernelFamily::HyperIntegrable(IntegrableVariant::A1), KernelParams::Model(p)).unwrap();
    let k = spec.build().unwrap().matrix(window).unwrap();
    let batch = SampleBatch::from_kernel(spec, window, 20_000, 21).unwrap();
    for (x, y) in [(1, 2), (1, 3), (2, 3), (1, 5), (3, 7)] {
        let set = PointConfiguration::new(vec![x, y]).unwrap();
        let expected = dense_determinant(&k.minor(&set.indices()));
        let est = estimate_correlation(&batch, &set).unwrap();
        assert!(est.z_score(expected) < 4.0, "({x},{y}): {} +- {} vs {expected}", est.estimate, est.std_error);
    }
}
