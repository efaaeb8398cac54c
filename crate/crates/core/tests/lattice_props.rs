use num_rational::Ratio;
use proptest::prelude::*;

use torfilter::lattice::{smith_normal_form, validate_dilation, DilationMatrix, IntMatrix};
use torfilter::linalg::{two_sided_defect, CMatrix};

fn dilation_strategy() -> impl Strategy<Value = DilationMatrix> {
    (1usize..=3)
        .prop_flat_map(|n| proptest::collection::vec(-4i64..=4, n * n).prop_map(move |e| (n, e)))
        .prop_filter_map("not an expanding matrix", |(n, e)| {
            let rows: Vec<Vec<i64>> = e.chunks(n).map(<[i64]>::to_vec).collect();
            validate_dilation(&rows).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn counts_agree_with_q(a in dilation_strategy()) {
        let reps = a.coset_representatives();
        let dual = a.dual_group();
        prop_assert_eq!(reps.len() as u64, a.q());
        prop_assert_eq!(dual.len() as u64, a.q());
    }

    #[test]
    fn representatives_are_distinct_cosets(a in dilation_strategy()) {
        let reps = a.coset_representatives();
        for (i, p) in reps.iter().enumerate() {
            for r in reps.iter().skip(i + 1) {
                let diff: Vec<i64> = p.iter().zip(r).map(|(x, y)| x - y).collect();
                prop_assert!(!a.in_lattice(&diff), "{:?} ~ {:?}", p, r);
            }
        }
    }

    #[test]
    fn dual_elements_solve_the_transpose_system(a in dilation_strategy()) {
        let at = a.transpose();
        for w in a.dual_group().elements() {
            for i in 0..a.dim() {
                let s: Ratio<i64> = (0..a.dim()).map(|k| w[k] * at[(i, k)]).sum();
                prop_assert!(s.is_integer());
            }
            prop_assert!(w.iter().all(|x| *x >= Ratio::from_integer(0) && *x < Ratio::from_integer(1)));
        }
    }

    #[test]
    fn character_table_is_scaled_unitary(a in dilation_strategy()) {
        let dual = a.dual_group();
        let table = dual.character_table(&a.coset_representatives());
        let scaled: CMatrix = table.map(|z| z / (a.q() as f64).sqrt());
        prop_assert!(two_sided_defect(&scaled) < 1e-12);
    }

    #[test]
    fn dual_denominators_divide_last_elementary_divisor(a in dilation_strategy()) {
        let diag = smith_normal_form(a.transpose()).diagonal();
        let last = *diag.last().unwrap();
        for w in a.dual_group().elements() {
            for x in w {
                prop_assert_eq!(last % x.denom(), 0);
            }
        }
    }

    #[test]
    fn smith_form_reconstructs_exactly(n in 1usize..=4, entries in proptest::collection::vec(-7i64..=7, 16)) {
        let m = IntMatrix::from_row_major(n, n, entries[..n * n].to_vec()).unwrap();
        let s = smith_normal_form(&m);
        prop_assert_eq!(&(&s.u * &s.d) * &s.v, m);
        prop_assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(n));
        prop_assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(n));
    }
}
