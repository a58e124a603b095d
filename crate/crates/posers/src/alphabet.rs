//! Nucleotides, allowed-nucleotide sets and their degenerate (IUPAC) codes.
//!
//! An [`AllowedSet`] is a nonempty subset of `{A, C, G, T}` packed into a
//! 4-bit mask. Each of the 15 nonempty subsets maps bijectively onto one of
//! the standard single-letter degenerate codes (Y = C or T, M = A or C, ...).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the four DNA bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Nucleotide {
    A,
    C,
    G,
    T,
}

pub const NUCLEOTIDES: [Nucleotide; 4] = [Nucleotide::A, Nucleotide::C, Nucleotide::G, Nucleotide::T];

impl Nucleotide {
    /// Index in A, C, G, T order (0..4).
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        NUCLEOTIDES.get(i).copied()
    }

    #[inline]
    pub fn to_char(self) -> char {
        match self {
            Nucleotide::A => 'A',
            Nucleotide::C => 'C',
            Nucleotide::G => 'G',
            Nucleotide::T => 'T',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c {
            'A' => Ok(Nucleotide::A),
            'C' => Ok(Nucleotide::C),
            'G' => Ok(Nucleotide::G),
            'T' => Ok(Nucleotide::T),
            other => Err(Error::InvalidNucleotide(other)),
        }
    }

    pub fn complement(self) -> Self {
        match self {
            Nucleotide::A => Nucleotide::T,
            Nucleotide::T => Nucleotide::A,
            Nucleotide::C => Nucleotide::G,
            Nucleotide::G => Nucleotide::C,
        }
    }
}

impl fmt::Display for Nucleotide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// Maps an ASCII byte to its nucleotide index, or `INVALID_BASE` if it is not
/// one of A/C/G/T. Lookup-table form so per-read classification stays cheap.
pub const INVALID_BASE: u8 = 0xFF;

pub(crate) static BASE_INDEX: [u8; 256] = {
    let mut t = [INVALID_BASE; 256];
    t[b'A' as usize] = 0;
    t[b'C' as usize] = 1;
    t[b'G' as usize] = 2;
    t[b'T' as usize] = 3;
    t
};

#[inline]
pub fn base_index(byte: u8) -> u8 {
    BASE_INDEX[byte as usize]
}

/// Returns true if every byte of `s` is one of A/C/G/T.
pub fn is_acgt(s: &str) -> bool {
    s.bytes().all(|b| base_index(b) != INVALID_BASE)
}

/// Reverse complement of a sequence. Bytes outside A/C/G/T are passed
/// through unchanged (they count as mismatches downstream).
pub fn reverse_complement(seq: &str) -> String {
    seq.bytes()
        .rev()
        .map(|b| match b {
            b'A' => 'T',
            b'T' => 'A',
            b'C' => 'G',
            b'G' => 'C',
            other => other as char,
        })
        .collect()
}

/// A nonempty subset of the four nucleotides, stored as a 4-bit mask
/// (bit 0 = A, bit 1 = C, bit 2 = G, bit 3 = T).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AllowedSet(u8);

impl AllowedSet {
    pub fn from_mask(mask: u8) -> Result<Self> {
        if mask == 0 || mask > 0xF {
            return Err(Error::EmptyAllowedSet);
        }
        Ok(AllowedSet(mask))
    }

    pub fn from_nucleotides(members: &[Nucleotide]) -> Result<Self> {
        let mut mask = 0u8;
        for n in members {
            mask |= 1 << n.index();
        }
        Self::from_mask(mask)
    }

    pub fn singleton(n: Nucleotide) -> Self {
        AllowedSet(1 << n.index())
    }

    /// The unrestricted set {A, C, G, T}.
    pub fn full() -> Self {
        AllowedSet(0xF)
    }

    #[inline]
    pub fn mask(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn cardinality(self) -> u32 {
        self.0.count_ones()
    }

    #[inline]
    pub fn contains(self, n: Nucleotide) -> bool {
        self.0 & (1 << n.index()) != 0
    }

    /// Membership test on a raw sequence byte; non-ACGT bytes are never members.
    #[inline]
    pub fn contains_byte(self, byte: u8) -> bool {
        let idx = base_index(byte);
        idx != INVALID_BASE && self.0 & (1 << idx) != 0
    }

    pub fn members(self) -> Vec<Nucleotide> {
        NUCLEOTIDES.iter().copied().filter(|n| self.contains(*n)).collect()
    }

    /// The complementary subset (disallowed letters). Empty for the full set.
    pub fn excluded(self) -> Vec<Nucleotide> {
        NUCLEOTIDES.iter().copied().filter(|n| !self.contains(*n)).collect()
    }

    pub fn is_subset_of(self, other: AllowedSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// All 15 nonempty subsets, in mask order.
    pub fn all() -> impl Iterator<Item = AllowedSet> {
        (1u8..=0xF).map(AllowedSet)
    }
}

impl fmt::Display for AllowedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", iupac_code_of(*self))
    }
}

// Degenerate codes indexed by mask (index 0 unused).
static CODE_BY_MASK: [char; 16] = [
    '?', 'A', 'C', 'M', 'G', 'R', 'S', 'V', 'T', 'W', 'Y', 'H', 'K', 'D', 'B', 'N',
];

/// The standard single-letter degenerate code for an allowed set.
pub fn iupac_code_of(allowed: AllowedSet) -> char {
    CODE_BY_MASK[allowed.mask() as usize]
}

/// Inverse of [`iupac_code_of`]; rejects anything that is not one of the 15
/// degenerate codes.
pub fn allowed_set_of(code: char) -> Result<AllowedSet> {
    let mask = match code {
        'A' => 0b0001,
        'C' => 0b0010,
        'G' => 0b0100,
        'T' => 0b1000,
        'M' => 0b0011,
        'R' => 0b0101,
        'S' => 0b0110,
        'V' => 0b0111,
        'W' => 0b1001,
        'Y' => 0b1010,
        'H' => 0b1011,
        'K' => 0b1100,
        'D' => 0b1101,
        'B' => 0b1110,
        'N' => 0b1111,
        other => return Err(Error::InvalidCode(other)),
    };
    AllowedSet::from_mask(mask)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn code_of_pair_sets() {
        let yt = AllowedSet::from_nucleotides(&[Nucleotide::C, Nucleotide::T]).unwrap();
        assert_eq!(iupac_code_of(yt), 'Y');
        let wt = AllowedSet::from_nucleotides(&[Nucleotide::A, Nucleotide::T]).unwrap();
        assert_eq!(iupac_code_of(wt), 'W');
        assert_eq!(iupac_code_of(AllowedSet::full()), 'N');
    }

    #[test]
    fn set_of_codes() {
        let s = allowed_set_of('S').unwrap();
        assert_eq!(s.members(), vec![Nucleotide::C, Nucleotide::G]);
        let a = allowed_set_of('A').unwrap();
        assert_eq!(a.members(), vec![Nucleotide::A]);
        assert!(matches!(allowed_set_of('Z'), Err(Error::InvalidCode('Z'))));
        assert!(matches!(allowed_set_of('n'), Err(Error::InvalidCode('n'))));
    }

    #[test]
    fn iupac_bijection_over_all_15_subsets() {
        for set in AllowedSet::all() {
            let code = iupac_code_of(set);
            assert_eq!(allowed_set_of(code).unwrap(), set, "code {code}");
        }
    }

    #[test]
    fn empty_set_rejected() {
        assert!(AllowedSet::from_mask(0).is_err());
        assert!(AllowedSet::from_mask(0x10).is_err());
    }

    #[test]
    fn reverse_complement_roundtrip() {
        assert_eq!(reverse_complement("ACGT"), "ACGT");
        assert_eq!(reverse_complement("AACG"), "CGTT");
        assert_eq!(reverse_complement(&reverse_complement("GATTACA")), "GATTACA");
    }

    #[test]
    fn base_index_table() {
        assert_eq!(base_index(b'A'), 0);
        assert_eq!(base_index(b'T'), 3);
        assert_eq!(base_index(b'N'), INVALID_BASE);
        assert_eq!(base_index(b'a'), INVALID_BASE);
    }
}
