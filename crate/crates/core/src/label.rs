//! Vertex labels: one base character from the 90-symbol MMP alphabet,
//! optionally preceded by any number of `+` characters.

use std::fmt;

/// The MMP base alphabet in its canonical order.
pub const ALPHABET: &[u8; 90] =
    b"123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz!\"#$%&'()*-/:;<=>?@[\\]^_`{|}~";

const fn build_rank() -> [u8; 128] {
    let mut t = [255u8; 128];
    let mut i = 0;
    while i < 90 {
        t[ALPHABET[i] as usize] = i as u8;
        i += 1;
    }
    t
}

static RANK: [u8; 128] = build_rank();

/// Position of `c` in [`ALPHABET`].
#[inline]
pub fn alphabet_rank(c: char) -> Option<u8> {
    let c = c as u32;
    if c < 128 && RANK[c as usize] != 255 {
        Some(RANK[c as usize])
    } else {
        None
    }
}

/// A vertex name such as `A`, `+A` or `++A`.
///
/// The derived order (prefix depth, then alphabet rank) is the order used
/// for canonical renaming: `1..~`, then `+1..+~`, and so on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Label {
    prefix: u32,
    base: u8,
}

impl Label {
    pub fn new(prefix: u32, base_rank: u8) -> Self {
        assert!(base_rank < 90);
        Label { prefix, base: base_rank }
    }

    /// The `k`-th label in canonical order.
    pub fn from_index(k: usize) -> Self {
        Label { prefix: (k / 90) as u32, base: (k % 90) as u8 }
    }

    pub fn index(&self) -> usize {
        self.prefix as usize * 90 + self.base as usize
    }

    pub fn prefix(&self) -> u32 {
        self.prefix
    }

    pub fn base(&self) -> char {
        ALPHABET[self.base as usize] as char
    }

    /// Parses a complete label such as `++X`.
    pub fn parse(s: &str) -> Option<Label> {
        let prefix = s.chars().take_while(|&c| c == '+').count();
        let mut rest = s[prefix..].chars();
        let base = alphabet_rank(rest.next()?)?;
        if rest.next().is_some() {
            return None;
        }
        Some(Label { prefix: prefix as u32, base })
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for _ in 0..self.prefix {
            f.write_str("+")?;
        }
        write!(f, "{}", self.base())
    }
}
