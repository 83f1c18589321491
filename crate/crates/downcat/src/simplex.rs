//! Monotone maps between finite ordinals `[m] → [n]`.

use std::fmt;

use crate::error::{Error, Result};

/// A monotone map `[m] → [n]`, stored by its values `(α(0), ..., α(m))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexMor {
    pub m: usize,
    pub n: usize,
    pub values: Vec<usize>,
}

impl SimplexMor {
    pub fn new(n: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("a simplex map needs at least one value".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) || values.iter().any(|&v| v > n) {
            return Err(Error::Invalid(format!("{values:?} is not a monotone map into [{n}]")));
        }
        Ok(SimplexMor { m: values.len() - 1, n, values })
    }

    pub(crate) fn raw(n: usize, values: Vec<usize>) -> Self {
        debug_assert!(!values.is_empty() && values.windows(2).all(|w| w[0] <= w[1]));
        SimplexMor { m: values.len() - 1, n, values }
    }

    pub fn identity(n: usize) -> Self {
        SimplexMor::raw(n, (0..=n).collect())
    }

    /// The constant map `[m] → [n]` at `v`.
    pub fn constant(m: usize, n: usize, v: usize) -> Self {
        SimplexMor::raw(n, vec![v; m + 1])
    }

    /// Coface `δⁿ_k : [n-1] → [n]` skipping `k`.
    pub fn delta(n: usize, k: usize) -> Self {
        assert!(n >= 1 && k <= n);
        SimplexMor::raw(n, (0..n).map(|i| if i < k { i } else { i + 1 }).collect())
    }

    /// Codegeneracy `σⁿ_k : [n+1] → [n]` repeating `k`.
    pub fn sigma(n: usize, k: usize) -> Self {
        assert!(k <= n);
        SimplexMor::raw(n, (0..=n + 1).map(|i| if i <= k { i } else { i - 1 }).collect())
    }

    /// The inclusion `[0] → [n]` at `k` (or of any sorted subset).
    pub fn iota(n: usize, subset: &[usize]) -> Self {
        SimplexMor::raw(n, subset.to_vec())
    }

    pub fn at(&self, i: usize) -> usize {
        self.values[i]
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &SimplexMor) -> SimplexMor {
        assert_eq!(f.n, self.m, "simplex maps not composable");
        SimplexMor::raw(self.n, f.values.iter().map(|&i| self.values[i]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.m == self.n && self.values.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0 && self.values[self.m] == self.n && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    /// Image factorization `self = δ ∘ σ` with σ surjective and δ injective.
    pub fn image_factorization(&self) -> (SimplexMor, SimplexMor) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let l = image.len() - 1;
        let mut sigma = Vec::with_capacity(self.m + 1);
        let mut j = 0;
        for &v in &self.values {
            while image[j] != v {
                j += 1;
            }
            sigma.push(j);
        }
        (SimplexMor::raw(l, sigma), SimplexMor::raw(self.n, image))
    }

    /// The pointwise largest section of a surjection.
    pub fn largest_section(&self) -> Result<SimplexMor> {
        if !self.is_surjective() {
            return Err(Error::NotSurjective(format!("{self}")));
        }
        let mut eps = vec![0; self.n + 1];
        for (i, &v) in self.values.iter().enumerate() {
            eps[v] = i;
        }
        Ok(SimplexMor::raw(self.m, eps))
    }

    /// Pointwise order between parallel maps.
    pub fn leq(&self, other: &SimplexMor) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// All monotone maps `[m] → [n]` in lexicographic order of values.
    pub fn all(m: usize, n: usize) -> Vec<SimplexMor> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(m + 1);
        fn go(m: usize, n: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<SimplexMor>) {
            if cur.len() == m + 1 {
                out.push(SimplexMor::raw(n, cur.clone()));
                return;
            }
            for v in lo..=n {
                cur.push(v);
                go(m, n, v, cur, out);
                cur.pop();
            }
        }
        go(m, n, 0, &mut cur, &mut out);
        out
    }

    /// Lexicographic rank of the values among all monotone maps `[m] → [n]`.
    pub fn rank(&self) -> usize {
        // Count tuples lexicographically smaller: at position i with floor lo,
        // every v in lo..values[i] contributes the number of monotone tails.
        let mut r = 0;
        let mut lo = 0;
        for i in 0..=self.m {
            let rest = self.m - i;
            for v in lo..self.values[i] {
                r += count_monotone(rest, self.n - v);
            }
            lo = self.values[i];
        }
        r
    }
}

/// Number of monotone sequences of length `len` with values in `0..=top`.
pub fn count_monotone(len: usize, top: usize) -> usize {
    binomial(len + top, len)
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `|Hom_Δ([m],[n])|`.
pub fn hom_count(m: usize, n: usize) -> usize {
    count_monotone(m + 1, n)
}

impl fmt::Display for SimplexMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]>[{}]:", self.m, self.n)?;
        let vs: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", vs.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators() {
        assert_eq!(SimplexMor::delta(1, 0).values, vec![1]);
        assert_eq!(SimplexMor::delta(1, 1).values, vec![0]);
        assert_eq!(SimplexMor::sigma(1, 0).values, vec![0, 0, 1]);
        assert_eq!(SimplexMor::sigma(0, 0).values, vec![0, 0]);
    }

    #[test]
    fn ranks_match_enumeration() {
        for m in 0..4 {
            for n in 0..4 {
                let all = SimplexMor::all(m, n);
                assert_eq!(all.len(), hom_count(m, n));
                for (i, a) in all.iter().enumerate() {
                    assert_eq!(a.rank(), i);
                }
            }
        }
    }

    #[test]
    fn sections() {
        let s = SimplexMor::sigma(1, 0);
        assert_eq!(s.largest_section().unwrap().values, vec![1, 2]);
        assert_eq!(SimplexMor::sigma(0, 0).largest_section().unwrap().values, vec![1]);
        assert!(SimplexMor::delta(1, 0).largest_section().is_err());
    }

    #[test]
    fn factorization() {
        let a = SimplexMor::raw(2, vec![0, 0, 2]);
        let (s, d) = a.image_factorization();
        assert_eq!(s.values, vec![0, 0, 1]);
        assert_eq!(d.values, vec![0, 2]);
        assert_eq!(d.after(&s), a);
    }
}
