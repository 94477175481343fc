use alloc::vec::Vec;
use core::fmt;

use super::Fq;

/// A polynomial over F_q, coefficients listed from the constant term up.
/// Trailing zero coefficients are stripped, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    f: Fq,
    c: Vec<u8>,
}

impl Poly {
    pub fn new(f: Fq, coeffs: &[u8]) -> Poly {
        let mut c: Vec<u8> = coeffs.iter().map(|&x| x % f.q()).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Poly { f, c }
    }

    pub fn zero(f: Fq) -> Poly {
        Poly { f, c: Vec::new() }
    }

    pub fn field(&self) -> Fq {
        self.f
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.c.get(i).copied().unwrap_or(0)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.c.last() == Some(&1)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c: Vec<u8> = (0..n).map(|i| self.f.add(self.coeff(i), o.coeff(i))).collect();
        Poly::new(self.f, &c)
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.f);
        }
        let mut c = alloc::vec![0u8; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = self.f.add(c[i + j], self.f.mul(a, b));
            }
        }
        Poly::new(self.f, &c)
    }

    /// Remainder of division by a nonzero polynomial.
    pub fn rem(&self, m: &Poly) -> Poly {
        let f = self.f;
        let dm = m.degree().expect("division by zero polynomial");
        let inv = f.inv(m.c[dm]);
        let mut r = self.c.clone();
        while r.len() > dm {
            let top = r.len() - 1;
            let k = f.mul(r[top], inv);
            if k != 0 {
                for (i, &mc) in m.c.iter().enumerate() {
                    let idx = top - dm + i;
                    r[idx] = f.sub(r[idx], f.mul(k, mc));
                }
            }
            r.pop();
        }
        Poly::new(f, &r)
    }

    /// Irreducibility by trial division with every monic polynomial of
    /// degree at most half the degree. Constants are not irreducible.
    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return false;
        }
        (1..=d / 2).all(|k| monic_of_degree(self.f, k).all(|g| !self.rem(&g).is_zero()))
    }

    /// The lexicographically first monic irreducible polynomial of degree d,
    /// comparing coefficients from the constant term up.
    pub fn first_irreducible(f: Fq, d: usize) -> Poly {
        monic_of_degree(f, d).find(Poly::is_irreducible).expect("irreducibles exist in every degree")
    }
}

/// All monic polynomials of degree d, lower coefficients in odometer order.
pub fn monic_of_degree(f: Fq, d: usize) -> impl Iterator<Item = Poly> {
    let q = f.q() as u64;
    let total = q.pow(d as u32);
    (0..total).map(move |mut idx| {
        let mut c = alloc::vec![0u8; d + 1];
        for x in c.iter_mut().take(d) {
            *x = (idx % q) as u8;
            idx /= q;
        }
        c[d] = 1;
        Poly::new(f, &c)
    })
}

impl fmt::Debug for Poly {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(fm, "0");
        }
        let mut first = true;
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(fm, " + ")?;
            }
            first = false;
            match (i, a) {
                (0, _) => write!(fm, "{a}")?,
                (1, 1) => write!(fm, "x")?,
                (1, _) => write!(fm, "{a}x")?,
                (_, 1) => write!(fm, "x^{i}")?,
                _ => write!(fm, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}
