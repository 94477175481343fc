//! Spread sets and rank-one decompositions of the semifields of order 16
//! and 81, compiled in as matrix encodings (see [`crate::codec`]).
//!
//! The order-81 families carry the usual Knuth-orbit labels I to XII; the
//! field is XII and the generalised twisted field IX. Bases are
//! representatives of isotopism classes, so comparisons with other
//! constructions go through [`crate::equivalence::are_equivalent`].

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::algebra::Hypercube;
use crate::codec;
use crate::codes::genbound;
use crate::gf::Fq;
use crate::search::verify_decomposition;
use crate::space::{MatSpace, SpreadSet};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasEntry<'a> {
    pub name: &'a str,
    /// Other names accepted by [`atlas_get`].
    pub aliases: &'a [&'a str],
    pub description: &'a str,
    pub q: u8,
    pub n: usize,
    pub basis: &'a [u64],
    /// Encodings of rank-one matrices whose span contains the spread set.
    pub decomposition: Option<&'a [u64]>,
    pub expected_rank: Option<usize>,
    /// The basis written out entry by entry, row-major, where available.
    pub shown_basis: Option<&'a [[u8; 16]]>,
    pub shown_decomposition: Option<&'a [[u8; 16]]>,
}

impl AtlasEntry<'_> {
    pub fn field(&self) -> Result<Fq> {
        Fq::new(self.q as u32)
    }

    pub fn space(&self) -> Result<MatSpace> {
        MatSpace::from_encodings(self.field()?, self.n, self.basis)
    }

    pub fn spread_set(&self) -> Result<SpreadSet> {
        SpreadSet::from_encodings(self.field()?, self.n, self.basis)
    }

    pub fn decomposition_mats(&self) -> Result<Option<Vec<crate::Mat>>> {
        let f = self.field()?;
        self.decomposition.map(|d| codec::decode_all(d, f, self.n)).transpose()
    }
}

/// Weight distribution of the codes generated by [`G1`] and [`G2`].
pub const G1_WEIGHTS: [u64; 10] = [1, 0, 0, 0, 6, 24, 24, 12, 12, 2];
/// Weight distribution of the code generated by [`G3`].
pub const G3_WEIGHTS: [u64; 10] = [1, 0, 0, 0, 10, 22, 22, 8, 14, 4];

/// Encodings of the four elementary diagonal matrices over F_3, n = 4.
const DIAG81: [u64; 4] = [1, 243, 59049, 14348907];

const fn with_diag(extra: [u64; 4]) -> [u64; 8] {
    [DIAG81[0], DIAG81[1], DIAG81[2], DIAG81[3], extra[0], extra[1], extra[2], extra[3]]
}

const F16_SHOWN_BASIS: &[[u8; 16]] = &[
    [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    [0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 1, 0],
    [0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1],
];
const F16_SHOWN_DECOMPOSITION: &[[u8; 16]] = &[
    [1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0],
    [0, 1, 1, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 1, 0, 1, 1, 1, 0, 1, 1, 1, 0],
    [1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
];

const S1_SHOWN_BASIS: &[[u8; 16]] = &[
    [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    [0, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 1],
    [0, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 1, 1, 1, 1, 1],
    [0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 1, 1, 1, 0, 1, 0],
];
const S1_SHOWN_DECOMPOSITION: &[[u8; 16]] = &[
    [0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    [0, 1, 1, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 1, 1, 1, 0, 1, 1, 0, 0, 0, 0, 1, 0, 1, 1],
    [1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0],
    [1, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0],
    [0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0],
];

const S2_SHOWN_BASIS: &[[u8; 16]] = &[
    [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    [0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 1, 0],
    [0, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 1, 0, 1, 0, 0],
    [0, 0, 0, 1, 1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 1, 1],
];
const S2_SHOWN_DECOMPOSITION: &[[u8; 16]] = &[
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 1, 1, 0, 0, 0, 0, 1, 0, 1, 1],
    [1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1],
    [0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1],
];

const F81_SHOWN_BASIS: &[[u8; 16]] = &[
    [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    [0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1],
    [0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 0, 1],
    [0, 0, 0, 1, 1, 0, 0, 1, 1, 1, 0, 1, 1, 1, 1, 1],
];
const F81_SHOWN_DECOMPOSITION: &[[u8; 16]] = &[
    [1, 0, 0, 2, 2, 0, 0, 1, 1, 0, 0, 2, 0, 0, 0, 0],
    [1, 2, 2, 1, 2, 1, 1, 2, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 2, 2],
    [1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0],
    [1, 2, 1, 0, 0, 0, 0, 0, 1, 2, 1, 0, 2, 1, 2, 0],
    [0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2, 1, 1, 1, 1],
    [0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0],
    [0, 1, 0, 2, 0, 1, 0, 2, 0, 2, 0, 1, 0, 0, 0, 0],
];

const GTF81_SHOWN_BASIS: &[[u8; 16]] = &[
    [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1],
    [0, 1, 0, 0, 1, 1, 0, 0, 1, 1, 1, 1, 1, 2, 1, 2],
    [0, 0, 1, 0, 0, 0, 0, 1, 1, 2, 1, 1, 2, 0, 1, 2],
    [0, 0, 0, 1, 0, 0, 1, 1, 2, 0, 2, 1, 0, 2, 1, 0],
];
const GTF81_SHOWN_DECOMPOSITION: &[[u8; 16]] = &[
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1],
    [1, 0, 2, 1, 0, 0, 0, 0, 2, 0, 1, 2, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 1, 2, 2, 0, 0, 0, 0, 1, 1, 2, 2],
    [1, 2, 1, 1, 1, 2, 1, 1, 1, 2, 1, 1, 1, 2, 1, 1],
    [0, 0, 0, 0, 0, 1, 2, 1, 0, 0, 0, 0, 0, 2, 1, 2],
    [1, 0, 1, 2, 2, 0, 2, 1, 1, 0, 1, 2, 1, 0, 1, 2],
    [1, 2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 2, 0],
    [1, 1, 2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
];

/// Generator matrix G1 of a [9, 4, 4]_3 code from the F81 decomposition.
pub const G1: [[u8; 9]; 4] = [
    [1, 1, 0, 1, 1, 0, 1, 0, 1],
    [2, 2, 1, 1, 0, 1, 1, 0, 1],
    [1, 0, 1, 1, 1, 2, 1, 1, 2],
    [0, 0, 2, 1, 2, 1, 0, 1, 0],
];

/// Generator matrix G2 of a [9, 4, 4]_3 code from the F81 decomposition.
pub const G2: [[u8; 9]; 4] = [
    [1, 1, 0, 1, 1, 1, 0, 0, 0],
    [0, 2, 0, 0, 2, 1, 0, 1, 1],
    [0, 2, 1, 0, 1, 1, 1, 0, 0],
    [2, 1, 1, 0, 0, 1, 0, 0, 2],
];

/// Generator matrix G3 of a [9, 4, 4]_3 code from the F81 decomposition.
pub const G3: [[u8; 9]; 4] = [
    [2, 2, 1, 2, 1, 2, 1, 0, 0],
    [1, 1, 1, 0, 1, 2, 0, 0, 0],
    [2, 0, 1, 0, 1, 2, 0, 1, 1],
    [2, 1, 0, 0, 0, 1, 1, 0, 1],
];

const D_I: [u64; 8] = with_diag([285649, 13819585, 25824144, 42259239]);
const D_II: [u64; 8] = with_diag([18834768, 20729397, 25402879, 28081132]);
const D_III: [u64; 8] = with_diag([325507, 7442224, 18834768, 20982117]);
const D_IV: [u64; 8] = with_diag([9035896, 18981031, 39280132, 41711436]);
const D_VII: [u64; 8] = with_diag([325507, 18834768, 34325839, 41964195]);
// Printed with the label VII a second time; it spans family VIII.
const D_VIII: [u64; 8] = with_diag([12329415, 18981031, 39280132, 42518560]);
const D_X: [u64; 8] = with_diag([423775, 13288075, 18834768, 21520120]);
const D_XI: [u64; 8] = with_diag([9035896, 18981031, 23363440, 39280132]);

const fn order16(name: &'static str, description: &'static str, basis: &'static [u64], decomposition: &'static [u64], shown: (&'static [[u8; 16]], &'static [[u8; 16]])) -> AtlasEntry<'static> {
    AtlasEntry {
        name,
        aliases: &[],
        description,
        q: 2,
        n: 4,
        basis,
        decomposition: Some(decomposition),
        expected_rank: Some(9),
        shown_basis: Some(shown.0),
        shown_decomposition: Some(shown.1),
    }
}

const fn family(name: &'static str, basis: &'static [u64], decomposition: &'static [u64]) -> AtlasEntry<'static> {
    AtlasEntry {
        name,
        aliases: &[],
        description: "semifield of order 81 from the Knuth orbit of the same label",
        q: 3,
        n: 4,
        basis,
        decomposition: Some(decomposition),
        expected_rank: Some(8),
        shown_basis: None,
        shown_decomposition: None,
    }
}

/// Every entry, in listing order.
pub const ATLAS: &[AtlasEntry<'static>] = &[
    order16(
        "F16",
        "field of order 16",
        &[33825, 14402, 25476, 50744],
        &[85, 8738, 57582, 32896, 1632, 3072, 30576, 53261, 4096],
        (F16_SHOWN_BASIS, F16_SHOWN_DECOMPOSITION),
    ),
    order16(
        "S1",
        "semifield of order 16 with a nucleus of order 4",
        &[33825, 51250, 63940, 24136],
        &[4112, 238, 80, 53469, 4353, 2304, 13059, 2570, 26112],
        (S1_SHOWN_BASIS, S1_SHOWN_DECOMPOSITION),
    ),
    order16(
        "S2",
        "semifield of order 16 with trivial nuclei",
        &[33825, 22594, 11684, 51864],
        &[1, 204, 53456, 39321, 4080, 2048, 43530, 47872, 57344],
        (S2_SHOWN_BASIS, S2_SHOWN_DECOMPOSITION),
    ),
    AtlasEntry {
        name: "F81",
        aliases: &["XII"],
        description: "field of order 81",
        q: 3,
        n: 4,
        basis: &[14408200, 15058227, 16660575, 21463326],
        decomposition: Some(&[363259, 5560, 38502864, 538084, 12328135, 21785760, 59787, 1614006, 221187]),
        expected_rank: Some(9),
        shown_basis: Some(F81_SHOWN_BASIS),
        shown_decomposition: Some(F81_SHOWN_DECOMPOSITION),
    },
    AtlasEntry {
        name: "GTF81",
        aliases: &["IX"],
        description: "generalised twisted field of order 81",
        q: 3,
        n: 4,
        basis: &[14408200, 37463637, 34827984, 8282925],
        // The last matrix is the one written out in full (encoding 76); the
        // concise table prints 7676, which is not of rank one.
        decomposition: Some(&[14528241, 426511, 40395672, 23137612, 36673317, 34435999, 18069028, 10097379, 76]),
        expected_rank: Some(9),
        shown_basis: Some(GTF81_SHOWN_BASIS),
        shown_decomposition: Some(GTF81_SHOWN_DECOMPOSITION),
    },
    family("I", &[5217375, 8168391, 10127682, 27851041], &D_I),
    family("II", &[4604203, 15640965, 26024736, 26930970], &D_II),
    family("III", &[14467492, 14958678, 39188133, 42832017], &D_III),
    family("IV", &[19878561, 24409758, 35533648, 42221016], &D_IV),
    family("V", &[2025495, 2627829, 14408200, 33856140], &D_I),
    family("VI", &[5157840, 10668294, 16374159, 28816156], &D_I),
    family("VII", &[8817750, 14467492, 20037945, 31590270], &D_VII),
    family("VIII", &[15093225, 30319137, 37030935, 37294588], &D_VIII),
    family("X", &[14408200, 16058439, 29914524, 37686954], &D_X),
    family("XI", &[22027141, 22483740, 29332053, 33106104], &D_XI),
];

/// The entry with the given name or alias.
pub fn atlas_get(name: &str) -> Result<&'static AtlasEntry<'static>> {
    ATLAS.iter().find(|e| e.name == name || e.aliases.contains(&name)).ok_or_else(|| Error::NotFound(name.to_string()))
}

/// Entry names in listing order (aliases excluded).
pub fn atlas_list() -> Vec<&'static str> {
    ATLAS.iter().map(|e| e.name).collect()
}

/// Outcome of one named check on one entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub entry: String,
    pub check: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelfCheckReport {
    pub checks: Vec<Check>,
}

impl SelfCheckReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Checks every compiled-in entry.
pub fn atlas_selfcheck() -> SelfCheckReport {
    selfcheck_entries(ATLAS)
}

/// Checks the given entries: the basis is a nonsingular n-dimensional
/// space, written-out matrices match the encodings, the decomposition
/// consists of linearly independent rank-one matrices spanning a space that
/// contains the spread set, and the expected rank lies between the code
/// bound and the decomposition length.
pub fn selfcheck_entries(entries: &[AtlasEntry]) -> SelfCheckReport {
    let mut report = SelfCheckReport::default();
    for e in entries {
        let mut push = |check: &'static str, result: core::result::Result<(), String>| {
            let (passed, detail) = match result {
                Ok(()) => (true, String::new()),
                Err(d) => (false, d),
            };
            report.checks.push(Check { entry: e.name.to_string(), check, passed, detail });
        };
        let spread = e.spread_set().map_err(|err| err.to_string());
        push("nonsingular", spread.as_ref().map(|_| ()).map_err(Clone::clone));
        if let (Some(shown), Ok(f)) = (e.shown_basis, e.field()) {
            push("shown-basis", shown_matches(f, e.n, shown, e.basis));
        }
        if let (Some(shown), Some(d), Ok(f)) = (e.shown_decomposition, e.decomposition, e.field()) {
            push("shown-decomposition", shown_matches(f, e.n, shown, d));
        }
        let Ok(c) = spread else { continue };
        let mats = e.decomposition_mats();
        if let Ok(Some(a)) = &mats {
            let v = verify_decomposition(c.space(), a);
            push("decomposition", if v.is_verified() { Ok(()) } else { Err(alloc::format!("{v:?}")) });
            let span = MatSpace::from_mats(c.field(), c.n(), a);
            push("independent", if span.dim() == a.len() { Ok(()) } else { Err(alloc::format!("span has dimension {}", span.dim())) });
        } else if let Err(err) = mats {
            push("decomposition", Err(err.to_string()));
        }
        if let Some(r) = e.expected_rank {
            let lower = genbound(&Hypercube::from_spread_set(&c).to_tensor()).map(|g| g.bound).unwrap_or(0);
            let upper = e.decomposition.map(|d| d.len());
            let ok = r >= lower && upper.is_none_or(|u| r <= u);
            push(
                "expected-rank",
                if ok { Ok(()) } else { Err(alloc::format!("rank {r} outside [{lower}, {upper:?}]")) },
            );
        }
    }
    report
}

fn shown_matches(f: Fq, n: usize, shown: &[[u8; 16]], codes: &[u64]) -> core::result::Result<(), String> {
    if shown.len() != codes.len() {
        return Err(alloc::format!("{} matrices shown, {} encoded", shown.len(), codes.len()));
    }
    for (i, (m, &v)) in shown.iter().zip(codes).enumerate() {
        let decoded = codec::decode(v, f, n).map_err(|e| e.to_string())?;
        if decoded.entries() != m[..n * n] {
            return Err(alloc::format!("matrix {i} differs from encoding {v}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::Verification;

    #[test]
    fn lookup() {
        assert_eq!(atlas_get("F16").unwrap().basis, &[33825, 14402, 25476, 50744]);
        assert_eq!(atlas_get("V").unwrap().basis, &[2025495, 2627829, 14408200, 33856140]);
        assert_eq!(atlas_get("IX").unwrap().name, "GTF81");
        assert_eq!(atlas_get("XII").unwrap().name, "F81");
        assert_eq!(atlas_get("XIII"), Err(Error::NotFound("XIII".into())));
        assert_eq!(atlas_list().len(), 15);
        assert_eq!(atlas_get("IX").unwrap().expected_rank, Some(9));
    }

    #[test]
    fn selfcheck_passes() {
        let r = atlas_selfcheck();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.checks.iter().any(|c| c.check == "shown-decomposition" && c.entry == "GTF81"));
    }

    #[test]
    fn corrupt_digit_is_named() {
        let e = atlas_get("S1").unwrap();
        let mut basis = e.basis.to_vec();
        basis[2] ^= 1 << 3;
        let bad = AtlasEntry { basis: &basis, ..e.clone() };
        let r = selfcheck_entries(&[bad]);
        let failed: Vec<&str> = r.failures().map(|c| c.check).collect();
        assert!(failed.contains(&"shown-basis"), "{failed:?}");
    }

    #[test]
    fn printed_gtf_encoding_is_not_rank_one() {
        let e = atlas_get("GTF81").unwrap();
        let c = e.space().unwrap();
        let mut d = e.decomposition_mats().unwrap().unwrap();
        d[8] = codec::decode(7676, Fq::F3, 4).unwrap();
        assert_eq!(verify_decomposition(&c, &d), Verification::NotRankOne { index: 8, rank: 3 });
    }

    #[test]
    fn second_seven_label_spans_family_eight() {
        let d = atlas_get("VIII").unwrap().decomposition_mats().unwrap().unwrap();
        let vii = atlas_get("VII").unwrap().space().unwrap();
        let viii = atlas_get("VIII").unwrap().space().unwrap();
        assert!(verify_decomposition(&viii, &d).is_verified());
        assert!(!verify_decomposition(&vii, &d).is_verified());
    }
}
