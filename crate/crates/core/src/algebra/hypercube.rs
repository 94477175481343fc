use alloc::vec::Vec;

use super::GeneralTensor;
use crate::gf::{Fq, Mat, Vector};
use crate::space::{MatSpace, SpreadSet};
use crate::{Error, Result};

/// The six permutations of the three tensor slots. Entry `s` of a
/// permutation is the new slot of old slot `s`.
pub const S3: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];

/// The structure constants of a bilinear multiplication on F_q^n:
/// `x o y = sum c[i][j][k] x_i y_j e_k`.
///
/// Contracting the first slot with e_i gives the matrix `c[i][.][.]`, so
/// with rows as the second index `x o y = y * L_x` for `L_x = sum x_i c[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypercube {
    f: Fq,
    n: usize,
    c: Vec<u8>,
}

impl Hypercube {
    pub fn zero(f: Fq, n: usize) -> Hypercube {
        Hypercube { f, n, c: alloc::vec![0; n * n * n] }
    }

    /// The hypercube whose i-th slot-one slice is `basis[i]`.
    pub fn from_basis(basis: &[Mat]) -> Result<Hypercube> {
        let first = basis.first().ok_or(Error::DimensionMismatch { expected: 1, got: 0 })?;
        let (f, n) = (first.field(), first.n());
        if basis.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: basis.len() });
        }
        let mut h = Hypercube::zero(f, n);
        for (i, m) in basis.iter().enumerate() {
            for j in 0..n {
                for k in 0..n {
                    h.set(i, j, k, m.get(j, k));
                }
            }
        }
        Ok(h)
    }

    /// The multiplication tensor of the algebra with `e_i o y = y * B_i`,
    /// where B_i is the spread-set element with first row e_i.
    pub fn from_spread_set(s: &SpreadSet) -> Hypercube {
        Hypercube::from_basis(&s.standard_basis()).expect("a spread set has n basis elements")
    }

    pub fn from_tensor(t: &GeneralTensor) -> Result<Hypercube> {
        let d = t.dims();
        if d.len() != 3 || d[0] != d[1] || d[1] != d[2] {
            return Err(Error::BadParameters("hypercube needs an n x n x n tensor"));
        }
        Ok(Hypercube { f: t.field(), n: d[0], c: t.data().to_vec() })
    }

    pub fn to_tensor(&self) -> GeneralTensor {
        GeneralTensor::from_data(self.f, &[self.n; 3], self.c.clone()).expect("shape matches")
    }

    #[inline]
    pub fn field(&self) -> Fq {
        self.f
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u8 {
        self.c[(i * self.n + j) * self.n + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: u8) {
        let n = self.n;
        self.c[(i * n + j) * n + k] = v % self.f.q();
    }

    /// The slot-one slice for e_i.
    pub fn slice(&self, i: usize) -> Mat {
        let n = self.n;
        Mat::from_entries(self.f, n, &self.c[i * n * n..(i + 1) * n * n]).expect("n^2 entries")
    }

    pub fn slices(&self) -> Vec<Mat> {
        (0..self.n).map(|i| self.slice(i)).collect()
    }

    /// L_x, the slot-one contraction by x.
    pub fn left_matrix(&self, x: &Vector) -> Mat {
        (0..self.n).fold(Mat::zero(self.f, self.n), |acc, i| acc.add(&self.slice(i).scale(x.get(i))))
    }

    /// The slot-one contraction space.
    pub fn to_space(&self) -> MatSpace {
        MatSpace::from_mats(self.f, self.n, &self.slices())
    }

    pub fn multiply(&self, x: &Vector, y: &Vector) -> Vector {
        self.left_matrix(x).vec_mul(y)
    }

    /// Permutes the slots: the entry at index (i_0, i_1, i_2) moves to the
    /// index whose slot `perm[s]` holds `i_s`.
    pub fn knuth_act(&self, perm: [usize; 3]) -> Hypercube {
        let n = self.n;
        let mut out = Hypercube::zero(self.f, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let old = [i, j, k];
                    let mut new = [0usize; 3];
                    for s in 0..3 {
                        new[perm[s]] = old[s];
                    }
                    out.set(new[0], new[1], new[2], self.get(i, j, k));
                }
            }
        }
        out
    }
}

/// Composition of slot permutations: `compose(t, s)` first applies `s`.
pub fn compose(t: [usize; 3], s: [usize; 3]) -> [usize; 3] {
    [t[s[0]], t[s[1]], t[s[2]]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::ExtField;
    use rand::{Rng, SeedableRng};

    fn f16() -> SpreadSet {
        SpreadSet::from_encodings(Fq::F2, 4, &[33825, 14402, 25476, 50744]).unwrap()
    }

    #[test]
    fn field_hypercube_multiplies_like_the_field() {
        let h = Hypercube::from_spread_set(&f16());
        assert_eq!(h.slice(0), Mat::identity(Fq::F2, 4));
        let e = ExtField::with_default_modulus(Fq::F2, 4).unwrap();
        for x in e.elements() {
            for y in e.elements() {
                assert_eq!(h.multiply(&x, &y), e.mul(&x, &y));
            }
        }
        assert_eq!(h.to_space(), f16().into_space());
    }

    #[test]
    fn from_basis_checks_size() {
        let b = [Mat::identity(Fq::F2, 4); 3];
        assert!(matches!(Hypercube::from_basis(&b), Err(Error::DimensionMismatch { .. })));
        let one = Hypercube::from_basis(&[Mat::identity(Fq::F3, 1)]).unwrap();
        assert_eq!(one.get(0, 0, 0), 1);
    }

    fn random_cube(rng: &mut impl Rng, f: Fq, n: usize) -> Hypercube {
        let mut h = Hypercube::zero(f, n);
        for v in h.c.iter_mut() {
            *v = rng.gen_range(0..f.q());
        }
        h
    }

    #[test]
    fn knuth_action_is_a_group_action() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let h = random_cube(&mut rng, Fq::F3, 3);
            assert_eq!(h.knuth_act(S3[0]), h);
            for s in S3 {
                for t in S3 {
                    assert_eq!(h.knuth_act(s).knuth_act(t), h.knuth_act(compose(t, s)));
                }
            }
        }
    }

    #[test]
    fn multiply_is_bilinear() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let f = Fq::F5;
        for _ in 0..50 {
            let h = random_cube(&mut rng, f, 3);
            let mut rv = || Vector::from_entries(f, &[rng.gen_range(0..5), rng.gen_range(0..5), rng.gen_range(0..5)]);
            let (x, x2, y, y2) = (rv(), rv(), rv(), rv());
            let a = 3;
            assert_eq!(h.multiply(&x.scale(a).add(&x2), &y), h.multiply(&x, &y).scale(a).add(&h.multiply(&x2, &y)));
            assert_eq!(h.multiply(&x, &y.scale(a).add(&y2)), h.multiply(&x, &y).scale(a).add(&h.multiply(&x, &y2)));
            assert!(h.multiply(&Vector::zero(f, 3), &y).is_zero());
        }
    }
}
