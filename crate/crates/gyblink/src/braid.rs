//! Braid words as link presentations: parsing, writhe, closure
//! combinatorics, Markov moves, disjoint unions, and the built-in
//! link catalog.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A word in the braid group B_n, stored as signed generator indices:
/// letter `+i` is sigma_i, `-i` is its inverse, with 1 <= i <= n-1.
/// The empty word on n strands is the trivial braid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 1 {
            return Err(Error::Invalid("strand count must be >= 1".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::LetterOutOfRange { letter: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn trivial(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Exponent sum; equals the writhe of the closure diagram.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// Inverse word: reversed sequence with negated letters.
    pub fn inverse(&self) -> Self {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// The permutation of {0..n-1} induced on strand endpoints.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        perm
    }

    /// Number of components of the braid closure: cycles of the
    /// underlying permutation.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        cycles
    }

    /// Markov conjugation w -> g^{-1} w g. Both words must live in the
    /// same braid group.
    pub fn markov_conjugate(&self, g: &BraidWord) -> Result<Self> {
        if self.strands != g.strands {
            return Err(Error::StrandMismatch(self.strands, g.strands));
        }
        let mut letters = g.inverse().letters;
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&g.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Markov stabilization w -> w sigma_n^{sign} in B_{n+1}.
    pub fn markov_stabilize(&self, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1, "sign must be +-1");
        let n = self.strands;
        let mut letters = self.letters.clone();
        letters.push(sign as i32 * n as i32);
        BraidWord { strands: n + 1, letters }
    }

    /// Disjoint union of closures: b's letters shifted past a's strands.
    pub fn disjoint_union(&self, b: &BraidWord) -> Self {
        let shift = self.strands as i32;
        let mut letters = self.letters.clone();
        letters.extend(b.letters.iter().map(|&l| l + l.signum() * shift));
        BraidWord { strands: self.strands + b.strands, letters }
    }

    pub fn format(&self) -> String {
        self.letters
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl std::fmt::Display for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "B{}[{}]", self.strands, self.format())
    }
}

/// Parse a whitespace-separated list of signed generator indices.
/// With `strands` omitted, n is inferred as max |letter| + 1 (minimum 1).
pub fn parse_braid(text: &str, strands: Option<usize>) -> Result<BraidWord> {
    let mut letters = Vec::new();
    for tok in text.split_whitespace() {
        let l: i32 = tok
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {tok:?}")))?;
        if l == 0 {
            return Err(Error::Parse("0 is not a braid generator".into()));
        }
        letters.push(l);
    }
    let inferred = letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(1);
    let n = strands.unwrap_or(inferred);
    BraidWord::new(n, letters)
}

/// Deterministic random braid word with letters uniform over +-{1..n-1}.
pub fn random_word(strands: usize, length: usize, seed: u64) -> Result<BraidWord> {
    if strands < 2 && length > 0 {
        return Err(Error::Invalid("need at least 2 strands for a nonempty word".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = (0..length)
        .map(|_| {
            let idx = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                idx
            } else {
                -idx
            }
        })
        .collect();
    BraidWord::new(strands, letters)
}

/// A named braid-closure link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkSpec {
    pub name: String,
    pub word: BraidWord,
}

/// Built-in regression targets. Same content as `data/catalog.txt`.
pub fn builtin_catalog() -> Vec<LinkSpec> {
    parse_catalog(include_str!("../data/catalog.txt")).expect("builtin catalog is valid")
}

/// Catalog file format: one link per line, `name strands letters...`,
/// `#` starts a comment, blank lines ignored. Names must be unique.
pub fn parse_catalog(text: &str) -> Result<Vec<LinkSpec>> {
    let mut out: Vec<LinkSpec> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let name = parts.next().unwrap().to_string();
        let strands: usize = parts
            .next()
            .ok_or_else(|| Error::Parse(format!("line {}: missing strand count", lineno + 1)))?
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad strand count", lineno + 1)))?;
        let rest: Vec<&str> = parts.collect();
        let word = parse_braid(&rest.join(" "), Some(strands))?;
        if out.iter().any(|l| l.name == name) {
            return Err(Error::Parse(format!("duplicate catalog name: {name}")));
        }
        out.push(LinkSpec { name, word });
    }
    Ok(out)
}

pub fn format_catalog(links: &[LinkSpec]) -> String {
    let mut s = String::new();
    for l in links {
        s.push_str(&l.name);
        s.push(' ');
        s.push_str(&l.word.strands().to_string());
        if !l.word.is_empty() {
            s.push(' ');
            s.push_str(&l.word.format());
        }
        s.push('\n');
    }
    s
}

pub fn find_link<'a>(catalog: &'a [LinkSpec], name: &str) -> Result<&'a LinkSpec> {
    catalog
        .iter()
        .find(|l| l.name == name)
        .ok_or_else(|| Error::UnknownLink(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let w = parse_braid("1 1 1", None).unwrap();
        assert_eq!((w.strands(), w.letters()), (2, &[1, 1, 1][..]));

        let w = parse_braid("1 -2 1 -2", None).unwrap();
        assert_eq!((w.strands(), w.letters()), (3, &[1, -2, 1, -2][..]));

        assert!(parse_braid("0", None).is_err());
        assert!(parse_braid("1 x", None).is_err());
        assert!(parse_braid("3", Some(2)).is_err());
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(parse_braid("1 1 1", None).unwrap().writhe(), 3);
        assert_eq!(parse_braid("1 -1", None).unwrap().writhe(), 0);
        assert_eq!(parse_braid("1 -2 1 -2", None).unwrap().writhe(), 0);
    }

    #[test]
    fn closure_component_examples() {
        assert_eq!(parse_braid("1", None).unwrap().closure_components(), 1);
        assert_eq!(BraidWord::trivial(2).closure_components(), 2);
        assert_eq!(parse_braid("1 1", None).unwrap().closure_components(), 2);
    }

    #[test]
    fn markov_conjugation() {
        let w = BraidWord::new(3, vec![1]).unwrap();
        let g = BraidWord::new(3, vec![2]).unwrap();
        assert_eq!(w.markov_conjugate(&g).unwrap().letters(), &[-2, 1, 2]);

        let e = BraidWord::trivial(3);
        assert_eq!(w.markov_conjugate(&e).unwrap(), w);

        let mismatch = BraidWord::new(2, vec![1]).unwrap();
        assert!(w.markov_conjugate(&mismatch).is_err());
    }

    #[test]
    fn stabilization() {
        let w = BraidWord::trivial(1).markov_stabilize(1);
        assert_eq!((w.strands(), w.letters()), (2, &[1][..]));

        let w = BraidWord::new(2, vec![1, 1, 1]).unwrap().markov_stabilize(-1);
        assert_eq!((w.strands(), w.letters()), (3, &[1, 1, 1, -2][..]));
    }

    #[test]
    fn disjoint_union_examples() {
        let u = BraidWord::trivial(1).disjoint_union(&BraidWord::trivial(1));
        assert_eq!((u.strands(), u.letters().len()), (2, 0));

        let a = BraidWord::new(2, vec![1]).unwrap();
        let u = a.disjoint_union(&a);
        assert_eq!((u.strands(), u.letters()), (4, &[1, 3][..]));
        assert_eq!(u.closure_components(), a.closure_components() * 2);
    }

    #[test]
    fn random_word_behaviour() {
        assert!(random_word(2, 0, 7).unwrap().is_empty());
        assert_eq!(random_word(3, 5, 42).unwrap(), random_word(3, 5, 42).unwrap());
        assert!(random_word(1, 3, 0).is_err());
        let w = random_word(4, 100, 7).unwrap();
        assert!(w.letters().iter().all(|&l| l != 0 && l.unsigned_abs() <= 3));
    }

    #[test]
    fn catalog_roundtrip() {
        let cat = builtin_catalog();
        assert_eq!(cat.len(), 5);
        let reparsed = parse_catalog(&format_catalog(&cat)).unwrap();
        assert_eq!(cat, reparsed);
        assert_eq!(find_link(&cat, "trefoil").unwrap().word.letters(), &[1, 1, 1]);
        assert!(find_link(&cat, "nonsense").is_err());
    }

    fn arb_word() -> impl Strategy<Value = BraidWord> {
        (2usize..5, proptest::collection::vec(any::<bool>(), 0..12), 0u64..u64::MAX).prop_map(
            |(n, signs, seed)| {
                let mut w = random_word(n, signs.len(), seed).unwrap();
                // mix in explicit signs so short words vary too
                let letters: Vec<i32> = w
                    .letters()
                    .iter()
                    .zip(signs)
                    .map(|(&l, s)| if s { l.abs() } else { -l.abs() })
                    .collect();
                w = BraidWord::new(n, letters).unwrap();
                w
            },
        )
    }

    proptest! {
        #[test]
        fn parse_format_roundtrip(w in arb_word()) {
            let back = parse_braid(&w.format(), Some(w.strands())).unwrap();
            prop_assert_eq!(back, w);
        }

        #[test]
        fn markov_moves_preserve_invariants(w in arb_word(), g in arb_word(), s in prop_oneof![Just(1i8), Just(-1i8)]) {
            if w.strands() == g.strands() {
                let c = w.markov_conjugate(&g).unwrap();
                prop_assert_eq!(c.writhe(), w.writhe());
                prop_assert_eq!(c.closure_components(), w.closure_components());
                let back = c.markov_conjugate(&g.inverse()).unwrap();
                // conjugating by g then g^{-1} wraps with cancelling letters;
                // the middle of the word is the original
                let mid = &back.letters()[2 * g.len()..2 * g.len() + w.len()];
                prop_assert_eq!(mid, w.letters());
            }
            let st = w.markov_stabilize(s);
            prop_assert_eq!(st.writhe(), w.writhe() + s as i64);
            prop_assert_eq!(st.closure_components(), w.closure_components());
        }
    }
}
