use ideal24::homology::*;
use num_bigint::BigInt;
use proptest::prelude::*;

fn factors(m: &IntMatrix<BigInt>) -> Vec<BigInt> {
    smith_normal_form(m).factors
}

#[test]
fn oracle_case() {
    assert_eq!(smith_normal_form(&IntMatrix::<i64>::from_rows(&[vec![2, 4], vec![6, 8]])).factors, vec![2, 4]);
}

#[derive(Clone, Debug)]
enum Op {
    AddRow(usize, usize, i64),
    AddCol(usize, usize, i64),
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    NegateRow(usize),
}

fn op() -> impl Strategy<Value = Op> {
    let ij = (0..6usize, 0..6usize).prop_filter("distinct", |(i, j)| i != j);
    prop_oneof![
        (ij.clone(), -3i64..=3).prop_map(|((i, j), k)| Op::AddRow(i, j, k)),
        (ij.clone(), -3i64..=3).prop_map(|((i, j), k)| Op::AddCol(i, j, k)),
        ij.clone().prop_map(|(i, j)| Op::SwapRows(i, j)),
        ij.prop_map(|(i, j)| Op::SwapCols(i, j)),
        (0..6usize).prop_map(Op::NegateRow),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariant_under_unimodular_operations(
        rows in prop::collection::vec(prop::collection::vec(-9i64..=9, 6), 6),
        ops in prop::collection::vec(op(), 1000),
    ) {
        let m = IntMatrix::<BigInt>::from_rows(&rows);
        let r = smith_normal_form(&m);
        prop_assert!(r.divisibility_holds());
        let mut n = m.clone();
        for o in ops {
            match o {
                Op::AddRow(i, j, k) => n.add_row_multiple(i, j, &BigInt::from(k)),
                Op::AddCol(i, j, k) => n.add_col_multiple(i, j, &BigInt::from(k)),
                Op::SwapRows(i, j) => n.swap_rows(i, j),
                Op::SwapCols(i, j) => n.swap_cols(i, j),
                Op::NegateRow(i) => n.negate_row(i),
            }
        }
        prop_assert_eq!(factors(&n), r.factors);
    }
}

#[test]
fn presented_groups() {
    // Two vertices, two edges between them, one loop going around once.
    assert_eq!(presented_first_homology(2, &[(0, 1), (0, 1)], &[]), AbelianGroup::free(1));
    assert_eq!(presented_first_homology(2, &[(0, 1), (0, 1)], &[vec![(0, 3), (1, -3)]]), AbelianGroup::new(0, &[3]));
}
