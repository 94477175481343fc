use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::gf::{Fq, Mat, PVec, Span, SpanElements, Vector, MAX_LEN, MAX_N};
use crate::{Error, Result};

/// Largest number of codewords enumerated by the exhaustive routines.
const MAX_CODEWORDS: u64 = 1 << 22;

/// A k x R generator matrix of a linear code of length R over F_q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenMatrix {
    f: Fq,
    len: usize,
    rows: Vec<PVec>,
}

impl GenMatrix {
    pub fn new(f: Fq, rows: Vec<Vec<u8>>) -> Result<GenMatrix> {
        let len = rows.first().map_or(0, Vec::len);
        if let Some(r) = rows.iter().find(|r| r.len() != len) {
            return Err(Error::DimensionMismatch { expected: len, got: r.len() });
        }
        if len > MAX_LEN {
            return Err(Error::TooLarge("code length above 64"));
        }
        let rows = rows.iter().map(|r| PVec::from_digits(&r.iter().map(|&x| x % f.q()).collect::<Vec<_>>())).collect();
        Ok(GenMatrix { f, len, rows })
    }

    pub fn field(&self) -> Fq {
        self.f
    }

    /// Number of rows.
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Code length R.
    pub fn length(&self) -> usize {
        self.len
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.rows.iter().map(|r| r.to_digits(self.len)).collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.rows[i].get(j)
    }

    pub fn rank(&self) -> usize {
        Span::from_vectors(self.f, self.len, self.rows.iter().copied()).dim()
    }

    /// Code dimension (rank of the generator matrix).
    pub fn dimension(&self) -> usize {
        self.rank()
    }

    fn check_size(&self) -> Result<()> {
        match (self.f.q() as u64).checked_pow(self.k() as u32) {
            Some(c) if c <= MAX_CODEWORDS => Ok(()),
            _ => Err(Error::TooLarge("too many codewords to enumerate")),
        }
    }

    /// Number of coefficient vectors giving a codeword of each weight
    /// 0..=R; sums to q^k.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        self.check_size()?;
        let mut dist = alloc::vec![0u64; self.len + 1];
        for c in SpanElements::new(self.f, &self.rows) {
            dist[c.weight() as usize] += 1;
        }
        Ok(dist)
    }

    /// Least weight of a nonzero codeword; `None` for the zero code.
    pub fn min_distance(&self) -> Result<Option<usize>> {
        self.check_size()?;
        Ok(SpanElements::new(self.f, &self.rows).map(|c| c.weight() as usize).filter(|&w| w > 0).min())
    }

    /// Column j as a vector of length k.
    fn column(&self, j: usize) -> PVec {
        let mut c = PVec::ZERO;
        for (i, r) in self.rows.iter().enumerate() {
            c.set(i, r.get(j));
        }
        c
    }

    /// The same code with a full-rank generator matrix.
    fn reduced(&self) -> GenMatrix {
        let s = Span::from_vectors(self.f, self.len, self.rows.iter().copied());
        GenMatrix { f: self.f, len: self.len, rows: s.rows().to_vec() }
    }
}

fn column_classes(f: Fq, cols: &[PVec]) -> HashMap<PVec, usize> {
    let mut m = HashMap::new();
    for c in cols {
        *m.entry(c.normalize(f).0).or_insert(0) += 1;
    }
    m
}

/// Whether some column permutation with nonzero column scalings maps the
/// code of `g1` onto the code of `g2`.
///
/// Codes are compared through their columns as points of projective space
/// (with multiplicity): the codes are monomially equivalent exactly when an
/// invertible k x k matrix carries one column multiset onto the other.
pub fn code_equivalent(g1: &GenMatrix, g2: &GenMatrix) -> Result<bool> {
    if g1.f != g2.f || g1.len != g2.len {
        return Ok(false);
    }
    if g1.weight_distribution()? != g2.weight_distribution()? {
        return Ok(false);
    }
    let (a, b) = (g1.reduced(), g2.reduced());
    let r = a.k();
    if r != b.k() {
        return Ok(false);
    }
    if r == 0 {
        return Ok(true);
    }
    if r > MAX_N {
        return Err(Error::TooLarge("code dimension above 8"));
    }
    let f = a.f;
    let ca: Vec<PVec> = (0..a.len).map(|j| a.column(j)).collect();
    let cb: Vec<PVec> = (0..b.len).map(|j| b.column(j)).collect();
    let target = column_classes(f, &cb);
    // Independent columns of a, and their inverse as a change of basis.
    let mut span = Span::new(f, r);
    let mut picked = Vec::new();
    for (j, c) in ca.iter().enumerate() {
        if span.insert(*c) {
            picked.push(j);
        }
    }
    let basis_a = columns_to_mat(f, r, &picked.iter().map(|&j| ca[j]).collect::<Vec<_>>());
    let inv_a = basis_a.inverse().expect("independent columns");
    let nonzero_b: Vec<usize> = (0..b.len).filter(|&j| !cb[j].is_zero()).collect();
    let mut chosen = Vec::with_capacity(r);
    Ok(search_images(f, r, &ca, &cb, &nonzero_b, &inv_a, &target, &mut chosen))
}

fn columns_to_mat(f: Fq, r: usize, cols: &[PVec]) -> Mat {
    let mut m = Mat::zero(f, r);
    for (j, c) in cols.iter().enumerate() {
        for i in 0..r {
            m.set(i, j, c.get(i));
        }
    }
    m
}

#[allow(clippy::too_many_arguments)]
fn search_images(
    f: Fq,
    r: usize,
    ca: &[PVec],
    cb: &[PVec],
    nonzero_b: &[usize],
    inv_a: &Mat,
    target: &HashMap<PVec, usize>,
    chosen: &mut Vec<PVec>,
) -> bool {
    if chosen.len() == r {
        // T = D * A^-1 where D holds the chosen images as columns.
        let t = columns_to_mat(f, r, chosen).mul(inv_a);
        let imgs: Vec<PVec> = ca.iter().map(|c| t.mul_vec(&Vector::from_packed(f, r, *c)).packed()).collect();
        return &column_classes(f, &imgs) == target;
    }
    let current = Span::from_vectors(f, r, chosen.iter().copied());
    for &j in nonzero_b {
        if current.contains(cb[j]) {
            continue;
        }
        // The first image can be taken unscaled: T and cT give the same code.
        let scales: Vec<u8> = if chosen.is_empty() { alloc::vec![1] } else { f.nonzero().collect() };
        for s in scales {
            chosen.push(cb[j].scale(s, f));
            if search_images(f, r, ca, cb, nonzero_b, inv_a, target, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(rows: &[&str]) -> GenMatrix {
        let rows = rows.iter().map(|r| r.bytes().map(|b| b - b'0').collect()).collect();
        GenMatrix::new(Fq::F3, rows).unwrap()
    }

    fn g1() -> GenMatrix {
        g(&["110110101", "221101101", "101112112", "002121010"])
    }
    fn g2() -> GenMatrix {
        g(&["110111000", "020021011", "021011100", "211001002"])
    }
    fn g3() -> GenMatrix {
        g(&["221212100", "111012000", "201012011", "210001101"])
    }

    #[test]
    fn published_generator_matrices() {
        assert_eq!(g1().weight_distribution().unwrap(), [1, 0, 0, 0, 6, 24, 24, 12, 12, 2]);
        assert_eq!(g2().weight_distribution().unwrap(), [1, 0, 0, 0, 6, 24, 24, 12, 12, 2]);
        assert_eq!(g3().weight_distribution().unwrap(), [1, 0, 0, 0, 10, 22, 22, 8, 14, 4]);
        for m in [g1(), g2(), g3()] {
            assert_eq!(m.min_distance().unwrap(), Some(4));
            assert_eq!(m.rank(), 4);
        }
        assert!(code_equivalent(&g1(), &g2()).unwrap());
        assert!(!code_equivalent(&g1(), &g3()).unwrap());
    }

    #[test]
    fn identity_code() {
        let id = GenMatrix::new(Fq::F2, alloc::vec![alloc::vec![1, 0, 0], alloc::vec![0, 1, 0], alloc::vec![0, 0, 1]]).unwrap();
        assert_eq!(id.min_distance().unwrap(), Some(1));
        assert_eq!(id.weight_distribution().unwrap(), [1, 3, 3, 1]);
    }

    #[test]
    fn monomial_images_are_equivalent() {
        let base = g3();
        let rows = base.rows();
        let perm = [4usize, 0, 8, 2, 6, 1, 3, 7, 5];
        let scale = [1u8, 2, 2, 1, 2, 1, 1, 2, 2];
        let moved: Vec<Vec<u8>> =
            rows.iter().map(|r| perm.iter().zip(scale).map(|(&p, s)| Fq::F3.mul(r[p], s)).collect()).collect();
        let moved = GenMatrix::new(Fq::F3, moved).unwrap();
        assert!(code_equivalent(&base, &moved).unwrap());
        // A change of generator rows keeps the code.
        let mut rows2 = rows.clone();
        rows2[0] = rows[0].iter().zip(&rows[1]).map(|(&a, &b)| Fq::F3.add(a, b)).collect();
        assert!(code_equivalent(&base, &GenMatrix::new(Fq::F3, rows2).unwrap()).unwrap());
    }
}
