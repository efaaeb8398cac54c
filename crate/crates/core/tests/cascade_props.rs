mod common;

use proptest::prelude::*;

use common::*;
use torfilter::cascade::{box_samples, convergence_table, ScalingTransform};
use torfilter::filters::{FilterBank, FilterScale};

fn masks(which: usize) -> FilterBank {
    match which {
        0 => haar_masks(),
        1 => quincunx_masks(),
        _ => FilterBank::new(dyadic(), vec![daubechies4_mask()], FilterScale::Mask).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn truncation_satisfies_the_two_scale_relation(
        which in 0usize..3,
        depth in 1usize..60,
        x in proptest::collection::vec(-4.0f64..4.0, 2),
    ) {
        let bank = masks(which);
        let a = bank.dilation();
        let t = ScalingTransform::new(bank.low_pass(), a, depth).unwrap();
        let x = &x[..a.dim()];
        let y = t.inverse_step(x);
        let lhs = t.evaluate_depth(x, depth + 1).unwrap();
        let rhs = t.factor(&y) * t.evaluate_depth(&y, depth).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-12);
    }
}

#[test]
fn quincunx_product_converges_on_a_box() {
    let bank = quincunx_masks();
    let t = ScalingTransform::new(bank.low_pass(), bank.dilation(), 60).unwrap();
    assert_eq!(t.evaluate(&[0.0, 0.0]).unwrap(), c(1.0));
    let points = box_samples(2, -2.0, 2.0, 21).unwrap();
    let table = convergence_table(&t, &points, &[60]).unwrap();
    assert!(table[0].max_change < 1e-5, "{:?}", table);
}

#[test]
fn haar_product_is_cauchy_in_depth() {
    let bank = haar_masks();
    let t = ScalingTransform::new(bank.low_pass(), bank.dilation(), 40).unwrap();
    let points = box_samples(1, -4.0, 4.0, 101).unwrap();
    let table = convergence_table(&t, &points, &[10, 20, 40]).unwrap();
    assert!(table.windows(2).all(|w| w[1].max_change <= w[0].max_change));
    assert!(table[2].max_change < 1e-6);
}
