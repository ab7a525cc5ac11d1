//! M-FSK signalling of permutation codewords and the two non-coherent
//! demodulators.
//!
//! A codeword of length `M` occupies `M` time slots. Matrices are indexed
//! `(row, column) = (frequency, time slot)`, both 0-based here; codeword
//! symbols stay 1-based.
//!
//! The envelope detector picks, per slot, the frequency maximising
//! `|y^H s_m|`. With `s_m = sqrt(Es) e_m` that product is
//! `sqrt(Es) |y_m|`, and since `sqrt(Es)` is the same for every `m` the
//! argmax is taken directly over the sample magnitudes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::permmap::Codeword;

/// Ratio of the threshold detector's level to the signal amplitude.
pub const THRESHOLD_FACTOR: f64 = 0.6;

/// Transmitted permutation matrix: one `sqrt(Es)` cell per row and column.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeMatrix {
    es: f64,
    /// Active frequency (0-based row) of each time slot.
    active: Vec<usize>,
}

impl CodeMatrix {
    pub fn m(&self) -> usize {
        self.active.len()
    }

    pub fn es(&self) -> f64 {
        self.es
    }

    pub fn amplitude(&self) -> f64 {
        self.es.sqrt()
    }

    pub fn active_row(&self, col: usize) -> usize {
        self.active[col]
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        if self.active[col] == row {
            self.amplitude()
        } else {
            0.0
        }
    }

    /// Row-major cell values.
    pub fn cells(&self) -> Vec<f64> {
        let m = self.m();
        let mut out = vec![0.0; m * m];
        for (j, &i) in self.active.iter().enumerate() {
            out[i * m + j] = self.amplitude();
        }
        out
    }

    pub fn codeword(&self) -> Codeword {
        Codeword::new(self.active.iter().map(|&i| (i + 1) as u8).collect())
    }
}

/// Places the energy of slot `j` on frequency `c[j]`.
pub fn modulate(c: &[u8], es: f64) -> Result<CodeMatrix> {
    if !(es > 0.0) {
        return Err(Error::Input(format!("symbol energy {es} must be positive")));
    }
    if !Codeword::from(c).is_permutation() {
        return Err(Error::Input(format!(
            "{} is not a permutation",
            Codeword::from(c)
        )));
    }
    Ok(CodeMatrix {
        es,
        active: c.iter().map(|&s| s as usize - 1).collect(),
    })
}

/// Complex channel output, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ReceivedMatrix {
    m: usize,
    cells: Vec<Complex64>,
}

impl ReceivedMatrix {
    pub fn new(m: usize, cells: Vec<Complex64>) -> Result<Self> {
        if cells.len() != m * m {
            return Err(Error::Input(format!(
                "expected {} cells for M = {m}, found {}",
                m * m,
                cells.len()
            )));
        }
        Ok(Self { m, cells })
    }

    pub fn zeros(m: usize) -> Self {
        Self {
            m,
            cells: vec![Complex64::new(0.0, 0.0); m * m],
        }
    }

    /// Real non-negative samples given row by row.
    pub fn from_magnitudes(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        let mut cells = Vec::with_capacity(m * m);
        for row in rows {
            if row.len() != m {
                return Err(Error::Input("magnitude grid is not square".into()));
            }
            cells.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Ok(Self { m, cells })
    }

    pub fn noiseless(s: &CodeMatrix) -> Self {
        Self {
            m: s.m(),
            cells: s.cells().into_iter().map(|x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.cells[row * self.m + col]
    }

    pub fn get_mut(&mut self, row: usize, col: usize) -> &mut Complex64 {
        &mut self.cells[row * self.m + col]
    }

    pub fn magnitude(&self, row: usize, col: usize) -> f64 {
        self.get(row, col).norm()
    }

    pub fn cells(&self) -> &[Complex64] {
        &self.cells
    }
}

/// Binary detector output, row-major. Any 0/1 pattern is allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemodMatrix {
    m: usize,
    cells: Vec<u8>,
}

impl DemodMatrix {
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let m = rows.len();
        let mut cells = Vec::with_capacity(m * m);
        for row in rows {
            if row.len() != m || row.iter().any(|&b| b > 1) {
                return Err(Error::Input("demodulated matrix must be square and binary".into()));
            }
            cells.extend_from_slice(row);
        }
        Ok(Self { m, cells })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.m + col]
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn ones(&self) -> usize {
        self.cells.iter().filter(|&&b| b == 1).count()
    }

    /// Branch metric `M - sum(s_ij AND r_ij)` against a transmitted pattern.
    pub fn mismatch(&self, s: &CodeMatrix) -> usize {
        let hits = (0..self.m)
            .filter(|&j| self.get(s.active_row(j), j) == 1)
            .count();
        self.m - hits
    }
}

/// Per-slot argmax of the sample magnitudes; the lowest row wins ties.
pub fn envelope_detect(y: &ReceivedMatrix) -> Codeword {
    let m = y.m();
    let symbols = (0..m)
        .map(|j| {
            let mut best = (0, f64::NEG_INFINITY);
            for i in 0..m {
                let mag = y.magnitude(i, j);
                if mag > best.1 {
                    best = (i, mag);
                }
            }
            (best.0 + 1) as u8
        })
        .collect();
    Codeword::new(symbols)
}

/// Marks every sample whose magnitude reaches `tau`.
pub fn threshold_detect(y: &ReceivedMatrix, tau: f64) -> DemodMatrix {
    DemodMatrix {
        m: y.m(),
        cells: y.cells().iter().map(|c| u8::from(c.norm() >= tau)).collect(),
    }
}

/// The customary threshold `0.6 sqrt(Es)`.
pub fn default_threshold(es: f64) -> f64 {
    THRESHOLD_FACTOR * es.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(s: &str) -> Vec<u8> {
        s.parse::<Codeword>().unwrap().symbols().to_vec()
    }

    #[test]
    fn identity_matrix() {
        let s = modulate(&cw("123"), 1.0).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(s.get(i, j), if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn worked_example_support() {
        let s = modulate(&cw("3214"), 1.0).unwrap();
        let nonzero: Vec<(usize, usize)> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| s.get(i, j) != 0.0)
            .collect();
        // (3,1),(2,2),(1,3),(4,4) in 1-based (row, column).
        let mut expect = vec![(2, 0), (1, 1), (0, 2), (3, 3)];
        expect.sort();
        assert_eq!(nonzero, expect);
    }

    #[test]
    fn amplitude_is_sqrt_es() {
        let s = modulate(&cw("231"), 4.0).unwrap();
        assert!(s.cells().iter().filter(|&&x| x != 0.0).all(|&x| x == 2.0));
        assert_eq!(s.cells().iter().filter(|&&x| x != 0.0).count(), 3);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(modulate(&cw("122"), 1.0).is_err());
        assert!(modulate(&cw("124"), 1.0).is_err());
        assert!(modulate(&cw("123"), 0.0).is_err());
    }

    #[test]
    fn envelope_examples() {
        let y = ReceivedMatrix::noiseless(&modulate(&cw("123"), 1.0).unwrap());
        assert_eq!(envelope_detect(&y).symbols(), &[1, 2, 3]);
        let flat = ReceivedMatrix::from_magnitudes(&[vec![0.5; 3], vec![0.5; 3], vec![0.5; 3]]).unwrap();
        assert_eq!(envelope_detect(&flat).symbols(), &[1, 1, 1]);
        let y = ReceivedMatrix::from_magnitudes(&[vec![0.1, 0.9], vec![0.8, 0.2]]).unwrap();
        assert_eq!(envelope_detect(&y).symbols(), &[2, 1]);
    }

    #[test]
    fn threshold_examples() {
        let es: f64 = 2.0;
        let tau = default_threshold(es);
        let y = ReceivedMatrix::from_magnitudes(&[
            vec![0.7 * es.sqrt(), 0.5 * es.sqrt()],
            vec![0.0, tau],
        ])
        .unwrap();
        let r = threshold_detect(&y, tau);
        assert_eq!(r.cells(), &[1, 0, 0, 1]);
    }

    #[test]
    fn noiseless_threshold_reproduces_support() {
        let s = modulate(&cw("3214"), 1.0).unwrap();
        let r = threshold_detect(&ReceivedMatrix::noiseless(&s), default_threshold(1.0));
        let expect = DemodMatrix::from_rows(&[
            vec![0, 0, 1, 0],
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 0, 1],
        ])
        .unwrap();
        assert_eq!(r, expect);
        assert_eq!(r.mismatch(&s), 0);
    }

    #[test]
    fn mismatch_extremes() {
        let s = modulate(&cw("1234"), 1.0).unwrap();
        let disjoint = threshold_detect(
            &ReceivedMatrix::noiseless(&modulate(&cw("2143"), 1.0).unwrap()),
            0.6,
        );
        assert_eq!(disjoint.mismatch(&s), 4);
        let full = DemodMatrix::from_rows(&vec![vec![1; 4]; 4]).unwrap();
        assert_eq!(full.mismatch(&s), 0);
    }

    #[test]
    fn envelope_inverts_modulate_for_all_permutations() {
        let mut perm = vec![1u8, 2, 3, 4, 5];
        // Heap's algorithm over all 120 permutations.
        fn heap(k: usize, a: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if k == 1 {
                out.push(a.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, a, out);
                if k % 2 == 0 {
                    a.swap(i, k - 1);
                } else {
                    a.swap(0, k - 1);
                }
            }
        }
        let mut all = Vec::new();
        heap(5, &mut perm, &mut all);
        assert_eq!(all.len(), 120);
        for c in all {
            let s = modulate(&c, 3.0).unwrap();
            assert_eq!(s.codeword().symbols(), &c[..]);
            let y = ReceivedMatrix::noiseless(&s);
            assert_eq!(envelope_detect(&y).symbols(), &c[..]);
        }
    }
}
