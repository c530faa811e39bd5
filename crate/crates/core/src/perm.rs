use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{0..n-1}`; `images[i]` is the image of point `i`.
///
/// Composition follows function notation: `a.compose(&b)` is `a ∘ b`, so `b`
/// is applied first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.iter().map(|&i| i as usize).collect()).is_ok());
        Permutation { images }
    }

    /// Parses disjoint-cycle notation over 0-based points, e.g. `"(0 1)(2 3)"`.
    /// The empty string and `"()"` give the identity.
    pub fn from_cycles(n: usize, text: &str) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::NotAPermutation(format!("expected '(' in {text:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::NotAPermutation(format!("unclosed cycle in {text:?}")))?;
            let points = open[..close]
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse::<usize>()
                        .map_err(|_| Error::NotAPermutation(format!("bad point {s:?} in {text:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            for &p in &points {
                if p >= n || seen[p] {
                    return Err(Error::NotAPermutation(format!(
                        "point {p} out of range or repeated in {text:?}"
                    )));
                }
                seen[p] = true;
            }
            for (k, &p) in points.iter().enumerate() {
                images[p] = points[(k + 1) % points.len()];
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self ∘ other ∘ self⁻¹`.
    pub fn conjugate(&self, other: &Permutation) -> Permutation {
        self.compose(other).compose(&self.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = p.compose(self);
            k += 1;
        }
        k
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.apply(start);
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation() {
        let p = Permutation::from_cycles(4, "(0 1)(2 3)").unwrap();
        assert_eq!(p.images(), vec![1, 0, 3, 2]);
        assert_eq!(p.to_string(), "(0 1)(2 3)");
        assert_eq!(p.order(), 2);
        assert!(Permutation::from_cycles(3, "").unwrap().is_identity());
        assert!(Permutation::from_cycles(3, "(0 3)").is_err());
        assert!(Permutation::from_cycles(3, "(0 1)(1 2)").is_err());
    }

    #[test]
    fn compose_is_function_composition() {
        let a = Permutation::from_cycles(3, "(0 1)").unwrap();
        let b = Permutation::from_cycles(3, "(1 2)").unwrap();
        let ab = a.compose(&b);
        // b sends 1 -> 2, a fixes 2
        assert_eq!(ab.apply(1), 2);
        assert_eq!(ab.order(), 3);
        assert!(ab.compose(&ab.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0]).is_err());
        assert!(Permutation::from_images(vec![2, 0]).is_err());
    }
}
