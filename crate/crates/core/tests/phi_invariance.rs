//! Out⁰ depends only on the outer class of φ: replacing φ by a product with
//! an inner automorphism changes nothing up to isomorphism.

mod common;

use common::{automorphism, group, INSTANCES};
use proptest::prelude::*;
use torsor::aut::inner;
use torsor::{cross_validate, iso_test, Caps, ElementId};

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn inner_perturbation(instance in 0..INSTANCES.len(), k in 0u32..60, before in any::<bool>()) {
        let (g, a) = INSTANCES[instance];
        let h = group(g);
        let phi = automorphism(&h, a);
        let gamma = inner(&h, ElementId(k % h.order() as u32));
        let perturbed = if before { gamma.then(&phi) } else { phi.then(&gamma) };

        let base = cross_validate(&h, &phi, Caps::default()).unwrap();
        let other = cross_validate(&h, &perturbed, Caps::default()).unwrap();
        prop_assert!(other.is_consistent());
        prop_assert_eq!(base.index.index, other.index.index);
        prop_assert!(iso_test(base.formula_group(), other.formula_group()).unwrap().is_some());
        prop_assert!(iso_test(base.direct_out0(), other.direct_out0()).unwrap().is_some());
        prop_assert!(iso_test(base.direct_out(), other.direct_out()).unwrap().is_some());
    }
}
