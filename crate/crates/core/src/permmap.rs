//! Permutation codebooks and the binary-to-permutation mapping.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A sequence of 1-based symbols `1..=M`, one per time slot.
///
/// Codewords in a [`Codebook`] are permutations; detector outputs wrapped in
/// this type need not be.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword(Vec<u8>);

impl Codeword {
    pub fn new(symbols: Vec<u8>) -> Self {
        Self(symbols)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True when the symbols are exactly `1..=len` in some order.
    pub fn is_permutation(&self) -> bool {
        let m = self.0.len();
        let mut seen = vec![false; m];
        self.0.iter().all(|&s| {
            let i = s as usize;
            if i == 0 || i > m || seen[i - 1] {
                false
            } else {
                seen[i - 1] = true;
                true
            }
        })
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 9 && self.0.iter().all(|&s| s <= 9) {
            for s in &self.0 {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = if s.contains(',') {
            s.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<u8>()
                        .map_err(|_| Error::Input(format!("bad symbol `{t}` in `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Input(format!("bad symbol `{c}` in `{s}`")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Self(symbols))
    }
}

impl From<&[u8]> for Codeword {
    fn from(symbols: &[u8]) -> Self {
        Self(symbols.to_vec())
    }
}

/// Number of positions where two sequences differ.
pub fn hamming_distance(a: &[u8], b: &[u8]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::Input(format!(
            "length mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    Ok(distance_unchecked(a, b))
}

#[inline]
fn distance_unchecked(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// How a mapping changes distances between pairs of binary tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceClass {
    /// Every pair keeps at least its binary distance and some pair keeps it exactly.
    Preserving,
    /// Every pair strictly gains distance.
    Increasing,
    /// Some pair loses distance.
    Reducing,
}

/// One-to-one mapping between all `n`-bit tuples and `2^n` permutations of `1..=M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codebook {
    m: usize,
    n: usize,
    /// `rows[q] = (tuple, codeword)` in file/table order.
    rows: Vec<(u32, Codeword)>,
    by_tuple: Vec<usize>,
    by_codeword: HashMap<Codeword, usize>,
    d_min: usize,
}

impl Codebook {
    /// Builds and validates a codebook from `(tuple, codeword)` rows.
    pub fn new(n: usize, rows: Vec<(u32, Codeword)>) -> Result<Self> {
        Self::validate(n, rows).map_err(|(_, e)| e)
    }

    fn validate(n: usize, rows: Vec<(u32, Codeword)>) -> std::result::Result<Self, (usize, Error)> {
        if n == 0 || n > 16 {
            return Err((0, Error::Config(format!("tuple length n = {n} out of range"))));
        }
        if rows.len() != 1 << n {
            return Err((
                rows.len(),
                Error::Config(format!("expected {} rows, found {}", 1 << n, rows.len())),
            ));
        }
        let m = rows[0].1.len();
        if m < 2 {
            return Err((0, Error::Config("codeword length must be at least 2".into())));
        }
        if n > m {
            return Err((0, Error::Config(format!("n = {n} exceeds M = {m}"))));
        }
        let mut by_tuple = vec![usize::MAX; rows.len()];
        let mut by_codeword = HashMap::with_capacity(rows.len());
        for (q, (tuple, word)) in rows.iter().enumerate() {
            if word.len() != m {
                return Err((q, Error::Config(format!("codeword {word} has length {}, expected {m}", word.len()))));
            }
            if !word.is_permutation() {
                return Err((q, Error::Config(format!("codeword {word} is not a permutation of 1..{m}"))));
            }
            let t = *tuple as usize;
            if t >= rows.len() {
                return Err((q, Error::Config(format!("tuple {t} does not fit in {n} bits"))));
            }
            if by_tuple[t] != usize::MAX {
                return Err((q, Error::Config(format!("tuple {t:0n$b} appears twice"))));
            }
            by_tuple[t] = q;
            if by_codeword.insert(word.clone(), q).is_some() {
                return Err((q, Error::Config(format!("codeword {word} appears twice"))));
            }
        }
        let mut d_min = usize::MAX;
        for a in 0..rows.len() {
            for b in a + 1..rows.len() {
                d_min = d_min.min(distance_unchecked(rows[a].1.symbols(), rows[b].1.symbols()));
            }
        }
        Ok(Self {
            m,
            n,
            rows,
            by_tuple,
            by_codeword,
            d_min,
        })
    }

    /// Reads the text format: one `bits codeword` pair per line, `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        let mut lines = Vec::new();
        let mut n = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (bits, word) = match (parts.next(), parts.next(), parts.next()) {
                (Some(b), Some(w), None) => (b, w),
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("expected `bits codeword`, found `{line}`"),
                    })
                }
            };
            if !bits.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::Parse {
                    line: line_no,
                    msg: format!("`{bits}` is not a binary tuple"),
                });
            }
            match n {
                None => n = Some(bits.len()),
                Some(len) if len != bits.len() => {
                    return Err(Error::Parse {
                        line: line_no,
                        msg: format!("tuple `{bits}` has {} bits, expected {len}", bits.len()),
                    })
                }
                _ => {}
            }
            let tuple = u32::from_str_radix(bits, 2).map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("tuple `{bits}` too long"),
            })?;
            let word: Codeword = word.parse().map_err(|e: Error| Error::Parse {
                line: line_no,
                msg: e.to_string(),
            })?;
            rows.push((tuple, word));
            lines.push(line_no);
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            msg: "codebook is empty".into(),
        })?;
        Self::validate(n, rows).map_err(|(q, e)| {
            let line = lines.get(q).copied().unwrap_or(lines.last().copied().unwrap_or(0));
            Error::Parse {
                line,
                msg: e.to_string(),
            }
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Serializes to the text format read by [`Codebook::parse`].
    pub fn to_text(&self) -> String {
        self.rows
            .iter()
            .map(|(t, w)| format!("{:0width$b} {w}\n", t, width = self.n))
            .collect()
    }

    /// `00->123, 01->132, 10->213, 11->231`.
    pub fn n2_m3() -> Self {
        Self::parse(include_str!("../data/n2_m3.book")).expect("built-in codebook")
    }

    /// The eight-row n = 3, M = 4 mapping.
    pub fn n3_m4() -> Self {
        Self::parse(include_str!("../data/n3_m4.book")).expect("built-in codebook")
    }

    /// A distance-preserving n = 4, M = 4 mapping (16 of the 24 permutations).
    pub fn dpm_n4_m4() -> Self {
        Self::parse(include_str!("../data/n4_m4_dpm.book")).expect("built-in codebook")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[(u32, Codeword)] {
        &self.rows
    }

    /// Codeword paired with an `n`-bit tuple.
    pub fn map_forward(&self, tuple: u32) -> &Codeword {
        &self.rows[self.by_tuple[tuple as usize]].1
    }

    /// Checked variant of [`Codebook::map_forward`] taking the tuple as bits.
    pub fn map_bits(&self, bits: &[u8]) -> Result<&Codeword> {
        if bits.len() != self.n {
            return Err(Error::Input(format!(
                "tuple has {} bits, codebook expects {}",
                bits.len(),
                self.n
            )));
        }
        Ok(self.map_forward(crate::convcode::bits_label(bits)))
    }

    /// Tuple of an exact codeword match.
    pub fn lookup(&self, word: &[u8]) -> Option<u32> {
        self.by_codeword
            .get(&Codeword::from(word))
            .map(|&q| self.rows[q].0)
    }

    pub fn contains(&self, word: &[u8]) -> bool {
        self.by_codeword.contains_key(&Codeword::from(word))
    }

    /// Tuple of the codeword nearest to `word` in Hamming distance, lowest row on ties.
    pub fn demap_min_distance(&self, word: &[u8]) -> u32 {
        self.demap_counted(word).0
    }

    /// As [`Codebook::demap_min_distance`], also returning the symbol
    /// comparisons spent. Exact matches cost one hash lookup of `M` symbols.
    pub fn demap_counted(&self, word: &[u8]) -> (u32, u64) {
        if let Some(t) = self.lookup(word) {
            return (t, self.m as u64);
        }
        let mut best = (usize::MAX, 0u32);
        for (t, c) in &self.rows {
            let d = distance_unchecked(c.symbols(), word);
            if d < best.0 {
                best = (d, *t);
            }
        }
        (best.1, (self.rows.len() * self.m) as u64)
    }

    /// Minimum pairwise Hamming distance between distinct codewords.
    pub fn min_distance(&self) -> usize {
        self.d_min
    }

    /// Fraction of all M! permutations that are codewords.
    pub fn density(&self) -> f64 {
        let factorial: f64 = (1..=self.m).map(|i| i as f64).product();
        self.rows.len() as f64 / factorial
    }

    /// Classifies the mapping by comparing every pair's binary and permutation distances.
    pub fn classify(&self) -> DistanceClass {
        let mut all_greater = true;
        for a in 0..self.rows.len() {
            for b in a + 1..self.rows.len() {
                let db = (self.rows[a].0 ^ self.rows[b].0).count_ones() as usize;
                let dp = distance_unchecked(self.rows[a].1.symbols(), self.rows[b].1.symbols());
                if dp < db {
                    return DistanceClass::Reducing;
                }
                if dp == db {
                    all_greater = false;
                }
            }
        }
        if all_greater {
            DistanceClass::Increasing
        } else {
            DistanceClass::Preserving
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cw(s: &str) -> Codeword {
        s.parse().unwrap()
    }

    #[test]
    fn builtin_forward() {
        let m3 = Codebook::n2_m3();
        assert_eq!(m3.map_forward(0b00), &cw("123"));
        assert_eq!(m3.map_forward(0b11), &cw("231"));
        let m4 = Codebook::n3_m4();
        assert_eq!(m4.map_forward(0b101), &cw("2413"));
        assert_eq!(m4.map_forward(0b000), &cw("1234"));
        assert_eq!(m4.map_bits(&[1, 0, 1]).unwrap(), &cw("2413"));
        assert!(m4.map_bits(&[1, 0]).is_err());
    }

    #[test]
    fn distances() {
        assert_eq!(hamming_distance(&[1, 2, 3], &[1, 2, 3]).unwrap(), 0);
        assert_eq!(hamming_distance(&[1, 2, 3], &[1, 3, 2]).unwrap(), 2);
        assert_eq!(hamming_distance(&[1, 2, 3, 4], &[2, 1, 4, 3]).unwrap(), 4);
        assert!(matches!(hamming_distance(&[1, 2], &[1, 2, 3]), Err(Error::Input(_))));
    }

    #[test]
    fn demapping() {
        let m3 = Codebook::n2_m3();
        assert_eq!(m3.demap_min_distance(&[2, 3, 1]), 0b11);
        // 233 is one symbol away from both 213 (row 10) and 231 (row 11).
        for (_, word) in m3.rows() {
            let d = hamming_distance(word.symbols(), &[2, 3, 3]).unwrap();
            assert_eq!(d == 1, ["213", "231"].contains(&word.to_string().as_str()));
        }
        assert_eq!(m3.demap_min_distance(&[2, 3, 3]), 0b10);
        let m4 = Codebook::n3_m4();
        assert_eq!(m4.demap_min_distance(&[1, 2, 3, 4]), 0b000);
    }

    #[test]
    fn demap_tie_goes_to_first_row() {
        // 321 is at distance 2 from 123 (row 00) and 231 (row 11), 3 from the others.
        let m3 = Codebook::n2_m3();
        assert_eq!(m3.demap_min_distance(&[3, 2, 1]), 0b00);
    }

    #[test]
    fn minimum_distances() {
        assert_eq!(Codebook::n2_m3().min_distance(), 2);
        let pair = Codebook::new(1, vec![(0, cw("12")), (1, cw("21"))]).unwrap();
        assert_eq!(pair.min_distance(), 2);
        // Brute-force over the 28 pairs of the M = 4 table.
        let m4 = Codebook::n3_m4();
        let words: Vec<_> = m4.rows().iter().map(|r| r.1.clone()).collect();
        let mut brute = usize::MAX;
        for i in 0..words.len() {
            for j in 0..i {
                brute = brute.min(hamming_distance(words[i].symbols(), words[j].symbols()).unwrap());
            }
        }
        assert_eq!(m4.min_distance(), brute);
        assert_eq!(brute, 2);
    }

    #[test]
    fn classes() {
        assert_eq!(Codebook::n2_m3().classify(), DistanceClass::Increasing);
        assert_eq!(Codebook::dpm_n4_m4().classify(), DistanceClass::Preserving);
        let dpm = Codebook::dpm_n4_m4();
        assert_eq!(dpm.len(), 16);
        assert!((dpm.density() - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn loader_reports_line_numbers() {
        let text = "# header\n00 123\n01 132\n10 213\n11 123\n";
        match Codebook::parse(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("unexpected {other:?}"),
        }
        match Codebook::parse("00 123\n01 1x2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match Codebook::parse("00 123\n01 122\n10 213\n11 231\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Codebook::parse("00 123\n01 132\n10 213\n").is_err());
        assert!(Codebook::parse("000 12\n001 21\n").is_err());
    }

    #[test]
    fn text_round_trip() {
        for book in [Codebook::n2_m3(), Codebook::n3_m4(), Codebook::dpm_n4_m4()] {
            let again = Codebook::parse(&book.to_text()).unwrap();
            assert_eq!(again.rows(), book.rows());
        }
    }

    #[test]
    fn display_formats() {
        assert_eq!(cw("3214").to_string(), "3214");
        let long = Codeword::new((1..=10).collect());
        assert_eq!(long.to_string(), "1,2,3,4,5,6,7,8,9,10");
        assert_eq!(long.to_string().parse::<Codeword>().unwrap(), long);
    }

    proptest! {
        #[test]
        fn demap_inverts_forward(which in 0usize..3, raw in 0u32..16) {
            let book = [Codebook::n2_m3(), Codebook::n3_m4(), Codebook::dpm_n4_m4()][which].clone();
            let tuple = raw % book.len() as u32;
            let word = book.map_forward(tuple).clone();
            prop_assert_eq!(book.demap_min_distance(word.symbols()), tuple);
        }

        #[test]
        fn demap_ignores_row_order(seed in any::<u64>(), word in proptest::collection::vec(1u8..=4, 4)) {
            use rand::{seq::SliceRandom, SeedableRng};
            let book = Codebook::n3_m4();
            let mut rows = book.rows().to_vec();
            rows.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let shuffled = Codebook::new(3, rows).unwrap();
            let a = book.demap_min_distance(&word);
            let b = shuffled.demap_min_distance(&word);
            let da = hamming_distance(book.map_forward(a).symbols(), &word).unwrap();
            let db = hamming_distance(book.map_forward(b).symbols(), &word).unwrap();
            prop_assert_eq!(da, db);
        }
    }
}
