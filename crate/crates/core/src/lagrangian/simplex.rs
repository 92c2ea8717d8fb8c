use crate::error::{Error, Result};

use super::Weighting;

/// Euclidean projection onto the standard simplex (sort-and-threshold).
///
/// # Panics
/// If `v` is empty or holds a non-finite entry.
pub fn project_to_simplex(v: &[f64]) -> Weighting {
    Weighting::from_raw(project_vec(v))
}

pub(crate) fn project_vec(v: &[f64]) -> Vec<f64> {
    assert!(!v.is_empty(), "cannot project an empty vector");
    assert!(v.iter().all(|x| x.is_finite()), "projection needs finite input");
    let sum: f64 = v.iter().sum();
    if v.iter().all(|&x| x >= 0.0) && (sum - 1.0).abs() <= f64::EPSILON {
        return v.to_vec();
    }
    let mut u = v.to_vec();
    u.sort_unstable_by(|a, b| b.total_cmp(a));
    let mut acc = 0.0;
    let mut tau = 0.0;
    for (k, &uk) in u.iter().enumerate() {
        acc += uk;
        let candidate = (acc - 1.0) / (k + 1) as f64;
        if uk - candidate > 0.0 {
            tau = candidate;
        }
    }
    let mut x: Vec<f64> = v.iter().map(|&vi| (vi - tau).max(0.0)).collect();
    let s: f64 = x.iter().sum();
    x.iter_mut().for_each(|xi| *xi /= s);
    x
}

/// Projects only the coordinates in `allowed` (bit mask), zeroing the rest.
pub(crate) fn project_on_face(v: &[f64], allowed: u64) -> Vec<f64> {
    let idx: Vec<usize> = (0..v.len()).filter(|&i| allowed >> i & 1 == 1).collect();
    let sub: Vec<f64> = idx.iter().map(|&i| v[i]).collect();
    let p = project_vec(&sub);
    let mut x = vec![0.0; v.len()];
    for (k, &i) in idx.iter().enumerate() {
        x[i] = p[k];
    }
    x
}

/// Uniform weight `1/|U|` on the 1-based vertices in `U`.
pub fn characteristic_vector(u: &[usize], n: usize) -> Result<Weighting> {
    if u.is_empty() {
        return Err(Error::InvalidArgument("characteristic vector of an empty set".into()));
    }
    let mut x = vec![0.0; n];
    let mut count = 0usize;
    for &v in u {
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if x[v - 1] == 0.0 {
            count += 1;
        }
        x[v - 1] = 1.0;
    }
    let w = 1.0 / count as f64;
    x.iter_mut().filter(|xi| **xi > 0.0).for_each(|xi| *xi = w);
    Ok(Weighting::from_raw(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: bisection on the threshold `τ` with
    /// `Σ max(v_i - τ, 0) = 1`.
    fn bisection_projection(v: &[f64]) -> Vec<f64> {
        let mass = |tau: f64| v.iter().map(|&x| (x - tau).max(0.0)).sum::<f64>();
        let (mut lo, mut hi) = (v.iter().cloned().fold(f64::INFINITY, f64::min) - 1.0, v.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mass(mid) > 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        v.iter().map(|&x| (x - 0.5 * (lo + hi)).max(0.0)).collect()
    }

    #[test]
    fn reference_examples() {
        assert_eq!(project_to_simplex(&[0.5, 0.5]).as_slice(), &[0.5, 0.5]);
        assert_eq!(project_to_simplex(&[2.0, 0.0]).as_slice(), &[1.0, 0.0]);
        let p = project_to_simplex(&[0.6, 0.6]);
        assert_eq!(p.as_slice(), &[0.5, 0.5]);
        assert_eq!(bisection_projection(&[0.6, 0.6]), vec![0.5, 0.5]);
    }

    #[test]
    fn agrees_with_bisection() {
        let cases: [&[f64]; 4] = [&[0.3, -1.2, 2.5, 0.1], &[1.0, 1.0, 1.0], &[-3.0, -2.0], &[0.2, 0.9, 0.4, 0.4, -0.1]];
        for v in cases {
            let p = project_to_simplex(v);
            let q = bisection_projection(v);
            for (a, b) in p.as_slice().iter().zip(&q) {
                assert!((a - b).abs() < 1e-12, "{v:?}");
            }
            assert!(Weighting::new(p.into_vec()).is_ok());
        }
    }

    #[test]
    fn face_projection() {
        let x = project_on_face(&[5.0, 0.3, 0.9], 0b101);
        assert_eq!(x, vec![1.0, 0.0, 0.0]);
        let x = project_on_face(&[0.2, 0.3, 0.2], 0b101);
        assert_eq!(x, vec![0.5, 0.0, 0.5]);
    }

    #[test]
    fn characteristic_vectors() {
        assert_eq!(characteristic_vector(&[1, 2], 3).unwrap().as_slice(), &[0.5, 0.5, 0.0]);
        assert_eq!(characteristic_vector(&[1], 1).unwrap().as_slice(), &[1.0]);
        assert!(characteristic_vector(&[], 3).is_err());
        assert!(characteristic_vector(&[4], 3).is_err());
    }
}
