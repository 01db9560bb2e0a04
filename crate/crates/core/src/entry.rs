//! Matrix cells: zero or a signed, optionally conjugated variable reference.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    pub fn from_negative(neg: bool) -> Self {
        if neg {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_negative(self.is_negative() != rhs.is_negative())
    }
}

/// A reference to variable `z_index`, with a sign and a conjugation flag.
///
/// Variable indices are 1-based labels, exactly as they appear in the file format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarRef {
    pub index: u32,
    pub sign: Sign,
    pub conjugated: bool,
}

impl VarRef {
    pub fn new(index: u32, sign: Sign, conjugated: bool) -> Self {
        VarRef {
            index,
            sign,
            conjugated,
        }
    }

    pub fn plain(index: u32) -> Self {
        VarRef::new(index, Sign::Plus, false)
    }

    pub fn conj(index: u32) -> Self {
        VarRef::new(index, Sign::Plus, true)
    }

    pub fn negated(self) -> Self {
        VarRef {
            sign: -self.sign,
            ..self
        }
    }

    /// Complex conjugate; the sign is real and stays put.
    pub fn conjugate(self) -> Self {
        VarRef {
            conjugated: !self.conjugated,
            ..self
        }
    }
}

/// One cell of a design.
///
/// Entries are totally ordered by the token order used for lexicographic
/// comparison of designs: `0` first, then by variable index, and within one
/// index `z`, `z*`, `-z`, `-z*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Entry {
    #[default]
    Zero,
    Var(VarRef),
}

impl Entry {
    pub fn var(index: u32, sign: Sign, conjugated: bool) -> Self {
        Entry::Var(VarRef::new(index, sign, conjugated))
    }

    pub fn plain(index: u32) -> Self {
        Entry::Var(VarRef::plain(index))
    }

    pub fn conj(index: u32) -> Self {
        Entry::Var(VarRef::conj(index))
    }

    pub fn is_zero(self) -> bool {
        matches!(self, Entry::Zero)
    }

    pub fn var_ref(self) -> Option<VarRef> {
        match self {
            Entry::Zero => None,
            Entry::Var(v) => Some(v),
        }
    }

    pub fn index(self) -> Option<u32> {
        self.var_ref().map(|v| v.index)
    }

    pub fn negated(self) -> Self {
        match self {
            Entry::Zero => Entry::Zero,
            Entry::Var(v) => Entry::Var(v.negated()),
        }
    }

    pub fn conjugate(self) -> Self {
        match self {
            Entry::Zero => Entry::Zero,
            Entry::Var(v) => Entry::Var(v.conjugate()),
        }
    }

    /// Multiply by a real sign.
    pub fn signed(self, sign: Sign) -> Self {
        match sign {
            Sign::Plus => self,
            Sign::Minus => self.negated(),
        }
    }

    fn token_key(self) -> (u8, u32, bool, bool) {
        match self {
            Entry::Zero => (0, 0, false, false),
            Entry::Var(v) => (1, v.index, v.sign.is_negative(), v.conjugated),
        }
    }
}

impl From<VarRef> for Entry {
    fn from(v: VarRef) -> Self {
        Entry::Var(v)
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.token_key().cmp(&other.token_key())
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for Entry {
    type Output = Entry;

    fn neg(self) -> Entry {
        self.negated()
    }
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign.is_negative() {
            f.write_str("-")?;
        }
        write!(f, "z{}", self.index)?;
        if self.conjugated {
            f.write_str("*")?;
        }
        Ok(())
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Zero => f.write_str("0"),
            Entry::Var(v) => v.fmt(f),
        }
    }
}

/// Why a token failed to parse. Positional context is added by the design parser.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TokenError(pub String);

impl FromStr for Entry {
    type Err = TokenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "0" {
            return Ok(Entry::Zero);
        }
        let (sign, rest) = match s.strip_prefix('-') {
            Some(rest) => (Sign::Minus, rest),
            None => (Sign::Plus, s),
        };
        let rest = rest
            .strip_prefix('z')
            .ok_or_else(|| TokenError(s.to_string()))?;
        let (digits, conjugated) = match rest.strip_suffix('*') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(TokenError(s.to_string()));
        }
        let index: u32 = digits.parse().map_err(|_| TokenError(s.to_string()))?;
        Ok(Entry::var(index, sign, conjugated))
    }
}
