//! Fixed-layout bit-string genotype. Five 10-bit material fields are followed
//! by thirty 6-bit positional fields, each read as an unsigned big-endian
//! integer, for 230 bits in total.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::eval::{EvalParams, ParamsError, MATERIAL_COUNT, PARAM_COUNT, PARAM_NAMES};

pub const CHROMOSOME_BITS: usize = 230;
pub const MATERIAL_BITS: usize = 10;
pub const POSITIONAL_BITS: usize = 6;

const WORDS: usize = CHROMOSOME_BITS.div_ceil(64);

/// Placement of one parameter inside the chromosome.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    pub name: &'static str,
    pub offset: usize,
    pub width: usize,
}

/// Ordered field descriptors covering all 230 bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenomeLayout {
    fields: [FieldSpec; PARAM_COUNT],
}

impl GenomeLayout {
    pub fn standard() -> GenomeLayout {
        let mut offset = 0;
        let fields = std::array::from_fn(|i| {
            let width = if i < MATERIAL_COUNT { MATERIAL_BITS } else { POSITIONAL_BITS };
            let f = FieldSpec {
                name: PARAM_NAMES[i],
                offset,
                width,
            };
            offset += width;
            f
        });
        GenomeLayout { fields }
    }

    pub fn fields(&self) -> &[FieldSpec; PARAM_COUNT] {
        &self.fields
    }

    pub fn total_bits(&self) -> usize {
        self.fields.iter().map(|f| f.width).sum()
    }

    /// Index of the field containing bit `bit`.
    pub fn field_of_bit(&self, bit: usize) -> usize {
        self.fields
            .iter()
            .position(|f| (f.offset..f.offset + f.width).contains(&bit))
            .expect("bit inside the chromosome")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChromosomeError {
    #[error("chromosome text has {0} bits, expected 230")]
    Length(usize),
    #[error("chromosome text has non-binary character `{0}`")]
    Char(char),
}

/// 230-bit genotype of one organism.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Chromosome {
    words: [u64; WORDS],
}

impl Chromosome {
    pub const LEN: usize = CHROMOSOME_BITS;

    pub const fn zeros() -> Chromosome {
        Chromosome { words: [0; WORDS] }
    }

    pub fn ones() -> Chromosome {
        let mut c = Chromosome { words: [u64::MAX; WORDS] };
        c.mask_tail();
        c
    }

    fn mask_tail(&mut self) {
        let used = CHROMOSOME_BITS % 64;
        if used != 0 {
            self.words[WORDS - 1] &= (1u64 << used) - 1;
        }
    }

    #[inline]
    pub fn get(&self, bit: usize) -> bool {
        assert!(bit < CHROMOSOME_BITS);
        self.words[bit / 64] >> (bit % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, bit: usize, value: bool) {
        assert!(bit < CHROMOSOME_BITS);
        let mask = 1u64 << (bit % 64);
        if value {
            self.words[bit / 64] |= mask;
        } else {
            self.words[bit / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, bit: usize) {
        assert!(bit < CHROMOSOME_BITS);
        self.words[bit / 64] ^= 1u64 << (bit % 64);
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Bitwise complement over all 230 bits.
    pub fn complement(&self) -> Chromosome {
        let mut c = Chromosome {
            words: self.words.map(|w| !w),
        };
        c.mask_tail();
        c
    }

    /// Every bit independently uniform.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Chromosome {
        let mut c = Chromosome {
            words: std::array::from_fn(|_| rng.gen()),
        };
        c.mask_tail();
        c
    }

    /// Bits `0..cut` from `self`, `cut..` from `other`.
    pub fn splice(&self, other: &Chromosome, cut: usize) -> Chromosome {
        assert!(cut <= CHROMOSOME_BITS);
        let mut out = *other;
        for w in 0..WORDS {
            let lo = w * 64;
            if cut >= lo + 64 {
                out.words[w] = self.words[w];
            } else if cut > lo {
                let mask = (1u64 << (cut - lo)) - 1;
                out.words[w] = (self.words[w] & mask) | (other.words[w] & !mask);
            }
        }
        out
    }

    fn field(&self, offset: usize, width: usize) -> u16 {
        (offset..offset + width).fold(0u16, |acc, bit| (acc << 1) | self.get(bit) as u16)
    }

    fn set_field(&mut self, offset: usize, width: usize, value: u16) {
        for i in 0..width {
            let bit = (value >> (width - 1 - i)) & 1 == 1;
            self.set(offset + i, bit);
        }
    }

    /// 230 `0`/`1` characters, bit 0 first.
    pub fn to_bit_string(&self) -> String {
        (0..CHROMOSOME_BITS).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }

    pub fn from_bit_string(s: &str) -> Result<Chromosome, ChromosomeError> {
        let s = s.trim();
        let n = s.chars().count();
        if n != CHROMOSOME_BITS {
            return Err(ChromosomeError::Length(n));
        }
        let mut c = Chromosome::zeros();
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => c.set(i, true),
                other => return Err(ChromosomeError::Char(other)),
            }
        }
        Ok(c)
    }
}

impl fmt::Debug for Chromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chromosome({})", self.to_bit_string())
    }
}

impl fmt::Display for Chromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

impl FromStr for Chromosome {
    type Err = ChromosomeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Chromosome::from_bit_string(s)
    }
}

/// Reads every field of the standard layout. All bit strings decode.
pub fn decode(c: &Chromosome) -> EvalParams {
    let layout = GenomeLayout::standard();
    let mut params = EvalParams::zero();
    for (i, f) in layout.fields().iter().enumerate() {
        params.values_mut()[i] = c.field(f.offset, f.width);
    }
    params
}

/// Inverse of [`decode`]; fails on any out-of-range field.
pub fn encode(params: &EvalParams) -> Result<Chromosome, ParamsError> {
    params.check()?;
    let layout = GenomeLayout::standard();
    let mut c = Chromosome::zeros();
    for (f, &v) in layout.fields().iter().zip(params.values()) {
        c.set_field(f.offset, f.width, v);
    }
    Ok(c)
}

/// A fresh uniformly random chromosome drawn from `rng`.
pub fn random_chromosome<R: Rng + ?Sized>(rng: &mut R) -> Chromosome {
    Chromosome::random(rng)
}
