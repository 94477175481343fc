use alloc::vec::Vec;

use super::{Fq, Mat, Poly, Vector, MAX_N};
use crate::{Error, Result};

/// The extension field F_q[x]/(m) for a monic irreducible m of degree n.
/// Elements are coordinate vectors in the power basis 1, x, ..., x^(n-1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    f: Fq,
    n: usize,
    modulus: Poly,
}

impl ExtField {
    pub fn new(modulus: Poly) -> Result<ExtField> {
        let f = modulus.field();
        let n = modulus.degree().ok_or(Error::NotIrreducible)?;
        if n == 0 || n > MAX_N {
            return Err(Error::UnsupportedDimension { q: f.q(), n });
        }
        if !modulus.is_monic() {
            return Err(Error::BadParameters("modulus must be monic"));
        }
        if !modulus.is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        Ok(ExtField { f, n, modulus })
    }

    /// The default modulus for (q, n): x^4+x+1 over F_2, x^4+2x^3+2 over
    /// F_3, otherwise the first irreducible in odometer order.
    pub fn default_modulus(f: Fq, n: usize) -> Poly {
        match (f.q(), n) {
            (2, 4) => Poly::new(f, &[1, 1, 0, 0, 1]),
            (3, 4) => Poly::new(f, &[2, 0, 0, 2, 1]),
            _ => Poly::first_irreducible(f, n),
        }
    }

    pub fn with_default_modulus(f: Fq, n: usize) -> Result<ExtField> {
        ExtField::new(ExtField::default_modulus(f, n))
    }

    pub fn base(&self) -> Fq {
        self.f
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Field order q^n.
    pub fn order(&self) -> u64 {
        (self.f.q() as u64).pow(self.n as u32)
    }

    fn to_poly(&self, a: &Vector) -> Poly {
        Poly::new(self.f, &a.entries())
    }

    fn vector_of(&self, p: &Poly) -> Vector {
        let mut c = p.coeffs().to_vec();
        c.resize(self.n, 0);
        Vector::from_entries(self.f, &c)
    }

    pub fn zero(&self) -> Vector {
        Vector::zero(self.f, self.n)
    }

    pub fn one(&self) -> Vector {
        Vector::unit(self.f, self.n, 0)
    }

    /// The class of x, i.e. the power-basis element x^1 (or x mod m when n = 1).
    pub fn generator(&self) -> Vector {
        self.vector_of(&Poly::new(self.f, &[0, 1]).rem(&self.modulus))
    }

    pub fn add(&self, a: &Vector, b: &Vector) -> Vector {
        a.add(b)
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        self.vector_of(&self.to_poly(a).mul(&self.to_poly(b)).rem(&self.modulus))
    }

    pub fn pow(&self, a: &Vector, mut e: u64) -> Vector {
        let mut base = *a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &Vector) -> Result<Vector> {
        if a.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// The i-th power of the Frobenius map, a -> a^(q^i).
    pub fn frobenius(&self, a: &Vector, i: usize) -> Vector {
        self.pow(a, (self.f.q() as u64).pow(i as u32))
    }

    /// The norm a^((q^n - 1)/(q - 1)), as a field element (it lies in F_q).
    pub fn norm(&self, a: &Vector) -> Vector {
        self.pow(a, (self.order() - 1) / (self.f.q() as u64 - 1))
    }

    /// All q^n elements.
    pub fn elements(&self) -> Vec<Vector> {
        Vector::all(self.f, self.n).collect()
    }

    /// The matrix of y -> a*y acting on row vectors: row j holds the
    /// coordinates of a * x^j.
    pub fn mul_matrix(&self, a: &Vector) -> Mat {
        let mut m = Mat::zero(self.f, self.n);
        for j in 0..self.n {
            let xj = Vector::unit(self.f, self.n, j);
            let r = self.mul(a, &xj);
            for k in 0..self.n {
                m.set(j, k, r.get(k));
            }
        }
        m
    }

    /// Matrix of an arbitrary F_q-linear map given by its action on the
    /// power basis (row j is the image of x^j).
    pub fn linear_matrix(&self, g: impl Fn(&Vector) -> Vector) -> Mat {
        let mut m = Mat::zero(self.f, self.n);
        for j in 0..self.n {
            let r = g(&Vector::unit(self.f, self.n, j));
            for k in 0..self.n {
                m.set(j, k, r.get(k));
            }
        }
        m
    }
}
