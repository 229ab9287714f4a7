//! Pareto dominance and non-dominated filtering.

use crate::error::{Error, Result};
use crate::objectives::Sense;

/// True when `u` dominates `v`: no worse in every objective and strictly
/// better in at least one, after sense normalization.
pub fn dominates(u: &[f64], v: &[f64], senses: &[Sense]) -> Result<bool> {
    if u.len() != v.len() || u.len() != senses.len() {
        return Err(Error::Config(
            "objective vectors and senses must have equal length".into(),
        ));
    }
    let mut strictly_better = false;
    for ((a, b), s) in u.iter().zip(v).zip(senses) {
        let (a, b) = (s.sign() * a, s.sign() * b);
        if a > b {
            return Ok(false);
        }
        if a < b {
            strictly_better = true;
        }
    }
    Ok(strictly_better)
}

/// Indices of the non-dominated subset. Duplicates are all retained: a point
/// equal to another in every objective is not dominated by it.
pub fn nondominated_filter(points: &[Vec<f64>], senses: &[Sense]) -> Result<Vec<usize>> {
    if points.is_empty() {
        return Err(Error::Config("non-dominated filter needs points".into()));
    }
    let mut keep = Vec::new();
    'outer: for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if i != j && dominates(q, p, senses)? {
                continue 'outer;
            }
        }
        keep.push(i);
    }
    Ok(keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const MIN2: [Sense; 2] = [Sense::Minimize, Sense::Minimize];

    #[test]
    fn better_in_both_dominates() {
        assert!(dominates(&[1.0, 1.0], &[2.0, 2.0], &MIN2).unwrap());
        assert!(!dominates(&[2.0, 2.0], &[1.0, 1.0], &MIN2).unwrap());
    }

    #[test]
    fn incomparable_points_do_not_dominate() {
        assert!(!dominates(&[1.0, 2.0], &[2.0, 1.0], &MIN2).unwrap());
        assert!(!dominates(&[2.0, 1.0], &[1.0, 2.0], &MIN2).unwrap());
    }

    #[test]
    fn equal_points_do_not_dominate() {
        assert!(!dominates(&[1.0, 1.0], &[1.0, 1.0], &MIN2).unwrap());
    }

    #[test]
    fn sense_normalization_flips_comparison() {
        let senses = [Sense::Minimize, Sense::Maximize];
        assert!(dominates(&[1.0, 9.0], &[2.0, 3.0], &senses).unwrap());
    }

    #[test]
    fn length_mismatch_is_error() {
        assert!(dominates(&[1.0], &[1.0, 2.0], &MIN2).is_err());
    }

    #[test]
    fn singleton_survives() {
        let pts = vec![vec![3.0, 4.0]];
        assert_eq!(nondominated_filter(&pts, &MIN2).unwrap(), vec![0]);
    }

    #[test]
    fn hand_checked_filter() {
        let pts = vec![
            vec![1.0, 3.0],
            vec![2.0, 2.0],
            vec![3.0, 1.0],
            vec![2.0, 3.0],
        ];
        assert_eq!(nondominated_filter(&pts, &MIN2).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn duplicates_all_retained() {
        let pts = vec![vec![1.0, 1.0], vec![1.0, 1.0], vec![2.0, 0.5]];
        assert_eq!(nondominated_filter(&pts, &MIN2).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn filter_is_idempotent() {
        let pts: Vec<Vec<f64>> = (0..50)
            .map(|i| {
                let x = (i as f64 * 0.7).sin() * 3.0 + 4.0;
                let y = (i as f64 * 1.3).cos() * 3.0 + 4.0;
                vec![x, y]
            })
            .collect();
        let first = nondominated_filter(&pts, &MIN2).unwrap();
        let reduced: Vec<Vec<f64>> = first.iter().map(|&i| pts[i].clone()).collect();
        let second = nondominated_filter(&reduced, &MIN2).unwrap();
        assert_eq!(second.len(), reduced.len());
    }

    proptest! {
        #[test]
        fn dominance_is_irreflexive_and_asymmetric(
            u in proptest::collection::vec(-10.0f64..10.0, 3),
            v in proptest::collection::vec(-10.0f64..10.0, 3),
        ) {
            let senses = [Sense::Minimize, Sense::Maximize, Sense::Minimize];
            prop_assert!(!dominates(&u, &u, &senses).unwrap());
            if dominates(&u, &v, &senses).unwrap() {
                prop_assert!(!dominates(&v, &u, &senses).unwrap());
            }
        }

        #[test]
        fn dominance_is_transitive(
            u in proptest::collection::vec(-10.0f64..10.0, 3),
            v in proptest::collection::vec(-10.0f64..10.0, 3),
            w in proptest::collection::vec(-10.0f64..10.0, 3),
        ) {
            let senses = [Sense::Minimize, Sense::Minimize, Sense::Minimize];
            if dominates(&u, &v, &senses).unwrap() && dominates(&v, &w, &senses).unwrap() {
                prop_assert!(dominates(&u, &w, &senses).unwrap());
            }
        }

        #[test]
        fn affine_rescaling_preserves_the_filter(
            scale in 0.01f64..100.0,
            shift in -50.0f64..50.0,
            seed in 0u64..500,
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let pts: Vec<Vec<f64>> = (0..40)
                .map(|_| vec![rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0)])
                .collect();
            let rescaled: Vec<Vec<f64>> = pts
                .iter()
                .map(|p| vec![p[0] * scale + shift, p[1]])
                .collect();
            let a = nondominated_filter(&pts, &MIN2).unwrap();
            let b = nondominated_filter(&rescaled, &MIN2).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
