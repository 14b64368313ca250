use num_traits::{One, Zero};

use crate::{CRat, Rat};

/// Dense square matrix over the Gaussian rationals.
///
/// Used for exact 2x2/4x4 operator arithmetic: Pauli matrices, Clifford
/// conjugation and stabilizer projectors all have entries in Q(i), so no
/// numerical unitary machinery is needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMat {
    n: usize,
    data: Vec<CRat>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        CMat { n, data: vec![CRat::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n);
        for i in 0..n {
            m[(i, i)] = CRat::one();
        }
        m
    }

    /// Build from integer Gaussian entries given as (re, im) pairs.
    pub fn from_gauss_int(entries: &[&[(i64, i64)]]) -> Self {
        let n = entries.len();
        assert!(entries.iter().all(|r| r.len() == n));
        let mut m = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let (re, im) = entries[i][j];
                m[(i, j)] = CRat::new(crate::rat(re), crate::rat(im));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if other[(k, j)].is_zero() {
                        continue;
                    }
                    let add = self[(i, k)].clone() * other[(k, j)].clone();
                    out[(i, j)] = out[(i, j)].clone() + add;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = a.clone() + b.clone();
        }
        out
    }

    pub fn scale(&self, s: &CRat) -> CMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.clone() * s.clone();
        }
        out
    }

    pub fn neg(&self) -> CMat {
        self.scale(&-CRat::one())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMat {
        let n = self.n;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn kron(&self, other: &CMat) -> CMat {
        let n = self.n * other.n;
        let mut out = CMat::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self[(i, j)].is_zero() {
                    continue;
                }
                for k in 0..other.n {
                    for l in 0..other.n {
                        out[(i * other.n + k, j * other.n + l)] =
                            self[(i, j)].clone() * other[(k, l)].clone();
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> CRat {
        let mut acc = CRat::zero();
        for i in 0..self.n {
            acc = acc + self[(i, i)].clone();
        }
        acc
    }

    /// Trace of `self * other` without forming the product.
    pub fn trace_mul(&self, other: &CMat) -> CRat {
        assert_eq!(self.n, other.n);
        let mut acc = CRat::zero();
        for i in 0..self.n {
            for k in 0..self.n {
                if !self[(i, k)].is_zero() && !other[(k, i)].is_zero() {
                    acc = acc + self[(i, k)].clone() * other[(k, i)].clone();
                }
            }
        }
        acc
    }

    /// `Some(c)` if `self == c * other` for a Gaussian rational scalar `c`.
    pub fn scalar_multiple_of(&self, other: &CMat) -> Option<CRat> {
        assert_eq!(self.n, other.n);
        let mut scalar: Option<CRat> = None;
        for (a, b) in self.data.iter().zip(other.data.iter()) {
            if b.is_zero() {
                if !a.is_zero() {
                    return None;
                }
                continue;
            }
            let c = a.clone() / b.clone();
            match &scalar {
                None => scalar = Some(c),
                Some(s) if *s == c => {}
                _ => return None,
            }
        }
        Some(scalar.unwrap_or_else(CRat::zero))
    }

    pub fn real_rational_entries(&self) -> Option<Vec<Rat>> {
        self.data
            .iter()
            .map(|c| if c.im.is_zero() { Some(c.re.clone()) } else { None })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = CRat;
    fn index(&self, (i, j): (usize, usize)) -> &CRat {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut CRat {
        &mut self.data[i * self.n + j]
    }
}
