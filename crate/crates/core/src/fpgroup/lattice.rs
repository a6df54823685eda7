use std::collections::HashMap;
use std::collections::VecDeque;
use std::hash::Hash;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A full-rank sublattice of `Z²` in exponent coordinates: `(a, b)` stands
/// for the translation `u^a v^b`.
///
/// Stored in Hermite normal form: rows `(h11, h12)` and `(0, h22)` with
/// `h11, h22 > 0` and `0 ≤ h12 < h22`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct SublatticeBasis {
    pub rows: [[i64; 2]; 2],
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl SublatticeBasis {
    pub fn full() -> Self {
        SublatticeBasis { rows: [[1, 0], [0, 1]] }
    }

    /// `k·Z²`.
    pub fn scaled(k: i64) -> Self {
        assert!(k > 0);
        SublatticeBasis { rows: [[k, 0], [0, k]] }
    }

    /// The lattice generated by `vectors`, or `None` if it is not of rank 2.
    pub fn from_generators(vectors: &[[i64; 2]]) -> Option<Self> {
        // combine all first coordinates into one vector with x = gcd
        let mut pivot = [0i64, 0i64];
        for v in vectors {
            let (g, s, t) = ext_gcd(pivot[0], v[0]);
            if g == 0 {
                continue;
            }
            pivot = [g, s * pivot[1] + t * v[1]];
        }
        if pivot[0] == 0 {
            return None;
        }
        // the kernel of the first coordinate
        let mut c = 0i64;
        for v in vectors {
            let k = v[0] / pivot[0];
            c = c.gcd(&(v[1] - k * pivot[1]));
        }
        if c == 0 {
            return None;
        }
        let b = pivot[1].rem_euclid(c);
        Some(SublatticeBasis { rows: [[pivot[0], b], [0, c]] })
    }

    /// Index in `Z²` (absolute determinant).
    pub fn index(&self) -> i64 {
        self.rows[0][0] * self.rows[1][1]
    }

    pub fn contains(&self, v: [i64; 2]) -> bool {
        let [[a, b], [_, c]] = self.rows;
        if v[0].rem_euclid(a) != 0 {
            return false;
        }
        let k = v[0] / a;
        (v[1] - k * b).rem_euclid(c) == 0
    }

    /// Splits `v` into its canonical coset representative and the lattice
    /// vector that was removed: `v = rep + shift`.
    pub fn reduce(&self, v: [i64; 2]) -> ([i64; 2], [i64; 2]) {
        let [[a, b], [_, c]] = self.rows;
        let k1 = v[0].div_euclid(a);
        let y = v[1] - k1 * b;
        let k2 = y.div_euclid(c);
        let rep = [v[0] - k1 * a, y - k2 * c];
        (rep, [v[0] - rep[0], v[1] - rep[1]])
    }

    /// Canonical coset representatives of `Z² / self`.
    pub fn coset_representatives(&self) -> Vec<[i64; 2]> {
        let [[a, _], [_, c]] = self.rows;
        let mut out = Vec::with_capacity((a * c) as usize);
        for x in 0..a {
            for y in 0..c {
                out.push([x, y]);
            }
        }
        out
    }

    /// Rows as vectors.
    pub fn basis(&self) -> [[i64; 2]; 2] {
        self.rows
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let n = self.index().lcm(&other.index());
        let mut gens = vec![[n, 0], [0, n]];
        for x in 0..n {
            for y in 0..n {
                if self.contains([x, y]) && other.contains([x, y]) {
                    gens.push([x, y]);
                }
            }
        }
        Self::from_generators(&gens).expect("intersection has full rank")
    }

    pub fn is_sublattice_of(&self, other: &Self) -> bool {
        self.rows.iter().all(|r| other.contains(*r))
    }
}

/// Stabilizer lattice of `start` under a `Z²`-action given by `step`.
///
/// `step(state, axis, forward)` applies `u^{±1}` (axis 0) or `v^{±1}`
/// (axis 1). The returned lattice's index equals the orbit size.
pub(crate) fn orbit_lattice<S, F>(start: S, mut step: F) -> (SublatticeBasis, usize)
where
    S: Clone + Eq + Hash,
    F: FnMut(&S, usize, bool) -> S,
{
    let mut seen: HashMap<S, [i64; 2]> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut periods = Vec::new();
    seen.insert(start.clone(), [0, 0]);
    queue.push_back((start, [0i64, 0i64]));
    while let Some((s, pos)) = queue.pop_front() {
        for axis in 0..2 {
            for forward in [true, false] {
                let next = step(&s, axis, forward);
                let mut p = pos;
                p[axis] += if forward { 1 } else { -1 };
                match seen.get(&next) {
                    Some(q) => {
                        let diff = [p[0] - q[0], p[1] - q[1]];
                        if diff != [0, 0] {
                            periods.push(diff);
                        }
                    }
                    None => {
                        seen.insert(next.clone(), p);
                        queue.push_back((next, p));
                    }
                }
            }
        }
    }
    let lattice = SublatticeBasis::from_generators(&periods).expect("finite orbit gives full rank");
    (lattice, seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_examples() {
        let l = SublatticeBasis::from_generators(&[[2, 0], [1, 1]]).unwrap();
        assert_eq!(l.rows, [[1, 1], [0, 2]]);
        assert_eq!(l.index(), 2);
        assert!(l.contains([2, 0]) && l.contains([1, 1]) && l.contains([0, 2]));
        assert!(!l.contains([1, 0]));
        let full = SublatticeBasis::from_generators(&[[1, 0], [0, 1]]).unwrap();
        assert_eq!(full, SublatticeBasis::full());
        assert!(SublatticeBasis::from_generators(&[[1, 2], [2, 4]]).is_none());
        assert!(SublatticeBasis::from_generators(&[]).is_none());
    }

    #[test]
    fn hnf_is_canonical() {
        let a = SublatticeBasis::from_generators(&[[3, 3], [0, 2]]).unwrap();
        let b = SublatticeBasis::from_generators(&[[-3, -1], [0, -2], [6, 0]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.index(), 6);
    }

    #[test]
    fn reduce_and_representatives() {
        let l = SublatticeBasis::from_generators(&[[0, 3], [1, 1]]).unwrap();
        let reps = l.coset_representatives();
        assert_eq!(reps.len() as i64, l.index());
        for v in [[5, -7], [-2, 4], [0, 0]] {
            let (rep, shift) = l.reduce(v);
            assert!(reps.contains(&rep));
            assert!(l.contains(shift));
        }
    }

    #[test]
    fn intersection() {
        let a = SublatticeBasis::scaled(2);
        let b = SublatticeBasis::from_generators(&[[3, 0], [0, 1]]).unwrap();
        let c = a.intersect(&b);
        assert_eq!(c, SublatticeBasis::from_generators(&[[6, 0], [0, 2]]).unwrap());
        assert!(c.is_sublattice_of(&a) && c.is_sublattice_of(&b));
    }
}
