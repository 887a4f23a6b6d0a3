use proptest::prelude::*;

use wallcross::partition::{enumerate_partitions, enumerate_partitions_bounded};
use wallcross::{Error, Partition};

fn partitions() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=12, 0..=12).prop_map(Partition::from_rows)
}

/// Partition numbers from Euler's pentagonal recurrence.
fn euler_partition_numbers(max: usize) -> Vec<u64> {
    let mut p = vec![0i64; max + 1];
    p[0] = 1;
    for n in 1..=max {
        let mut total = 0i64;
        for k in 1.. {
            let k = k as i64;
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > n {
                break;
            }
            total += sign * p[n - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= n {
                total += sign * p[n - g2];
            }
        }
        p[n] = total;
    }
    p.into_iter().map(|v| v as u64).collect()
}

/// Column lengths counted directly from the rows.
fn transpose_oracle(rows: &[usize]) -> Vec<usize> {
    let width = rows.iter().copied().max().unwrap_or(0);
    (1..=width)
        .map(|j| rows.iter().filter(|&&r| r >= j).count())
        .collect()
}

#[test]
fn enumeration_counts_match_euler() {
    let expected = euler_partition_numbers(30);
    for (n, &count) in expected.iter().enumerate() {
        let all = enumerate_partitions(n).unwrap();
        assert_eq!(all.len() as u64, count, "p({n})");
    }
}

#[test]
fn enumeration_is_descending_and_valid() {
    for n in 0..=14 {
        let all = enumerate_partitions(n).unwrap();
        for w in all.windows(2) {
            assert!(w[0] > w[1], "{} then {}", w[0], w[1]);
        }
        for p in &all {
            assert_eq!(p.size(), n);
        }
    }
    assert_eq!(enumerate_partitions(4).unwrap()[0], Partition::row(4));
    assert_eq!(enumerate_partitions(4).unwrap()[4], Partition::column(4));
}

#[test]
fn enumeration_bound() {
    assert!(matches!(
        enumerate_partitions_bounded(12, 11),
        Err(Error::Capacity { .. })
    ));
    assert_eq!(enumerate_partitions_bounded(11, 11).unwrap().len(), 56);
}

#[test]
fn decompositions_exhaustive() {
    for n in 0..=10 {
        for lambda in enumerate_partitions(n).unwrap() {
            for e in 2..=11 {
                let (nu, rho) = lambda.decompose_regular(e);
                assert!(nu.is_regular(e));
                assert_eq!(nu.concat(&rho.repeat(e)), lambda);

                let (nu, rho) = lambda.decompose_divisible(e);
                assert!(nu.parts().iter().all(|r| r % e != 0));
                assert_eq!(nu.concat(&rho.scale(e)), lambda);
            }
        }
    }
}

proptest! {
    #[test]
    fn transpose_is_an_involution(lambda in partitions()) {
        prop_assert_eq!(lambda.transpose().transpose(), lambda.clone());
        prop_assert_eq!(lambda.transpose().size(), lambda.size());
        prop_assert_eq!(lambda.transpose().len(), lambda.first_part());
    }

    #[test]
    fn transpose_matches_column_count(lambda in partitions()) {
        prop_assert_eq!(lambda.transpose().parts().to_vec(), transpose_oracle(lambda.parts()));
    }

    #[test]
    fn text_round_trip(lambda in partitions()) {
        let text = lambda.to_string();
        prop_assert_eq!(text.parse::<Partition>().unwrap(), lambda.clone());
        let expanded: Vec<String> = lambda.parts().iter().map(|r| r.to_string()).collect();
        if !lambda.is_empty() {
            prop_assert_eq!(expanded.join(",").parse::<Partition>().unwrap(), lambda.clone());
            let wrapped = format!("({})", expanded.join(","));
            prop_assert_eq!(wrapped.parse::<Partition>().unwrap(), lambda);
        }
    }

    #[test]
    fn regularity_matches_multiplicities(lambda in partitions(), e in 2usize..=6) {
        let max_mult = lambda
            .parts()
            .iter()
            .map(|&r| lambda.parts().iter().filter(|&&s| s == r).count())
            .max()
            .unwrap_or(0);
        prop_assert_eq!(lambda.is_regular(e), max_mult < e);
    }

    #[test]
    fn divisible_statistic(lambda in partitions(), s in 1usize..=13) {
        let direct: usize = lambda.parts().iter().filter(|&&r| r % s == 0).sum();
        prop_assert_eq!(lambda.stat_divisible(s), direct);
    }

    #[test]
    fn scale_and_repeat_transpose(lambda in partitions(), e in 1usize..=5) {
        // Scaling the rows by e repeats every column e times.
        prop_assert_eq!(lambda.scale(e).transpose(), lambda.transpose().repeat(e));
        prop_assert_eq!(lambda.repeat(e).size(), e * lambda.size());
    }

    #[test]
    fn concat_is_commutative(a in partitions(), b in partitions()) {
        prop_assert_eq!(a.concat(&b), b.concat(&a));
        prop_assert_eq!(a.concat(&b).size(), a.size() + b.size());
    }
}
