use proptest::prelude::*;

use strict_dpp::kernels::{
    ContourForm, IntegrableVariant, KernelFamily, KernelParams, KernelSpec, MacdonaldForm, MacdonaldKernel,
};
use strict_dpp::{ModelParams, Order};

fn lattice_families() -> impl Strategy<Value = KernelFamily> {
    prop_oneof![
        Just(KernelFamily::HyperSeries),
        Just(KernelFamily::HyperIntegrable(IntegrableVariant::A1)),
        Just(KernelFamily::HyperIntegrable(IntegrableVariant::A2)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_kernels_symmetric_and_nu_even(
        family in lattice_families(),
        alpha in 0.05f64..6.0,
        xi in 0.05f64..0.9,
        x in 1u32..25,
        y in 1u32..25,
    ) {
        let params = KernelParams::Model(ModelParams::new(alpha, xi).unwrap());
        let k = KernelSpec::new(family, params).unwrap().build().unwrap();
        let flipped = KernelSpec::new(family, params.with_negated_nu()).unwrap().build().unwrap();
        let kxy = k.lattice(x, y).unwrap();
        prop_assert!((kxy - k.lattice(y, x).unwrap()).abs() <= 1e-12 * kxy.abs().max(1e-3));
        prop_assert!((kxy - flipped.lattice(x, y).unwrap()).abs() < 1e-11);
    }

    #[test]
    fn gamma_kernel_symmetric_and_nu_even(alpha in 0.05f64..3.0, x in 1u32..15, y in 1u32..15) {
        prop_assume!((alpha - 0.25).abs() > 1e-3);
        let params = KernelParams::alpha(alpha).unwrap();
        let k = KernelSpec::new(KernelFamily::GammaLimit, params).unwrap().build().unwrap();
        let flipped = KernelSpec::new(KernelFamily::GammaLimit, params.with_negated_nu()).unwrap().build().unwrap();
        let kxy = k.lattice(x, y).unwrap();
        prop_assert!((kxy - k.lattice(y, x).unwrap()).abs() <= 1e-12);
        prop_assert!((kxy - flipped.lattice(x, y).unwrap()).abs() < 1e-11);
    }

    #[test]
    fn continuum_kernel_symmetric_and_nu_even(nu in 0.0f64..0.45, imaginary in any::<bool>(), u in 0.1f64..6.0, v in 0.1f64..6.0) {
        let order = if imaginary { Order::Imaginary(nu) } else { Order::Real(nu) };
        for form in [MacdonaldForm::Whittaker, MacdonaldForm::Bessel] {
            let k = MacdonaldKernel::new(order, form).unwrap();
            let kuv = k.value(u, v).unwrap();
            prop_assert!((kuv - k.value(v, u).unwrap()).abs() < 1e-9);
            let flipped = MacdonaldKernel::new(order.negated(), form).unwrap();
            prop_assert!((kuv - flipped.value(u, v).unwrap()).abs() < 1e-11);
        }
    }
}

#[test]
fn contour_kernels_symmetric_and_nu_even() {
    for (alpha, xi) in [(0.2, 0.3), (1.0, 0.4)] {
        let params = KernelParams::Model(ModelParams::new(alpha, xi).unwrap());
        for form in [ContourForm::First, ContourForm::Second] {
            let family = KernelFamily::HyperContour(form);
            let k = KernelSpec::new(family, params).unwrap().build().unwrap();
            let flipped = KernelSpec::new(family, params.with_negated_nu()).unwrap().build().unwrap();
            for (x, y) in [(1, 3), (2, 5), (4, 4)] {
                let kxy = k.lattice(x, y).unwrap();
                assert!((kxy - k.lattice(y, x).unwrap()).abs() < 1e-12);
                assert!((kxy - flipped.lattice(x, y).unwrap()).abs() < 1e-11);
            }
        }
    }
}
