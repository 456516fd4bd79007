//! Exact feasibility of homogeneous linear systems with strict inequalities,
//! by Fourier-Motzkin elimination.

use num_integer::Integer;

/// Relation of a row `a` to zero in `<a, u> ? 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Rel {
    Positive,
    #[cfg_attr(not(test), allow(dead_code))]
    NonNegative,
    Zero,
}

/// Whether some `u` satisfies every `(a, rel)` as `<a, u> rel 0`.
pub(crate) fn homogeneous_feasible(rows: &[(Vec<i64>, Rel)], dim: usize) -> bool {
    // rows carry (coefficients, strict)
    let mut sys: Vec<(Vec<i128>, bool)> = Vec::new();
    for (a, rel) in rows {
        let v: Vec<i128> = a.iter().map(|&x| x as i128).collect();
        match rel {
            Rel::Positive => sys.push((v, true)),
            Rel::NonNegative => sys.push((v, false)),
            Rel::Zero => {
                sys.push((v.iter().map(|x| -x).collect(), false));
                sys.push((v, false));
            }
        }
    }
    for k in 0..dim {
        let mut next: Vec<(Vec<i128>, bool)> = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for row in sys {
            match row.0[k].signum() {
                1 => pos.push(row),
                -1 => neg.push(row),
                _ => next.push(row),
            }
        }
        for (p, ps) in &pos {
            for (n, ns) in &neg {
                let cp = p[k];
                let cn = -n[k];
                let mut v: Vec<i128> = p.iter().zip(n).map(|(a, b)| cn * a + cp * b).collect();
                let g = v.iter().fold(0i128, |g, x| g.gcd(x));
                if g > 1 {
                    for x in v.iter_mut() {
                        *x /= g;
                    }
                }
                next.push((v, *ps || *ns));
            }
        }
        next.sort();
        next.dedup();
        // a weak copy of a strict row is implied by it
        let strict: Vec<Vec<i128>> = next.iter().filter(|r| r.1).map(|r| r.0.clone()).collect();
        next.retain(|r| r.1 || !strict.contains(&r.0));
        if next.iter().any(|(v, s)| *s && v.iter().all(|&x| x == 0)) {
            return false;
        }
        sys = next;
    }
    !sys.iter().any(|(_, s)| *s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn separating_examples() {
        // u1 > 0 and u1 < 0
        assert!(!homogeneous_feasible(&[(vec![1, 0], Rel::Positive), (vec![-1, 0], Rel::Positive)], 2));
        // u1 > 0, u2 = 0
        assert!(homogeneous_feasible(&[(vec![1, 0], Rel::Positive), (vec![0, 1], Rel::Zero)], 2));
        // u1 + u2 > 0, u1 >= 0, u2 = 0, -u1 >= 0
        assert!(!homogeneous_feasible(
            &[
                (vec![1, 1], Rel::Positive),
                (vec![1, 0], Rel::NonNegative),
                (vec![0, 1], Rel::Zero),
                (vec![-1, 0], Rel::NonNegative)
            ],
            2
        ));
        assert!(homogeneous_feasible(&[], 3));
        assert!(!homogeneous_feasible(&[(vec![0, 0], Rel::Positive)], 2));
    }
}
