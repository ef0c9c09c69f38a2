//! Polynomials in sign-normalized Plücker coordinates, the relations among
//! them, lifts of initial minors and a modular evaluation oracle.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::young_tableaux::Tableau;

pub const DEFAULT_PRIME: u64 = (1 << 61) - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PluckerError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("index {0:?} has a cardinality that is not a flag dimension")]
    BadCardinality(Vec<u32>),
    #[error("index {0:?} does not fit a {1}x{2} matrix")]
    OutOfRange(Vec<u32>, usize, usize),
    #[error("cannot parse bracket {0:?}")]
    BadBracket(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

pub type Result<T> = std::result::Result<T, PluckerError>;

/// A strictly increasing index set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PluckerIndex(Vec<u32>);

impl PluckerIndex {
    /// Builds an index from a set; panics on unsorted or repeated entries.
    pub fn from_sorted(entries: Vec<u32>) -> Self {
        assert!(entries.windows(2).all(|w| w[0] < w[1]), "index {entries:?} is not strictly increasing");
        PluckerIndex(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for PluckerIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.iter().all(|&x| x < 10) { "" } else { "," };
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "P_{{{}}}", parts.join(sep))
    }
}

/// Sorts `seq`, returning the parity of the sorting permutation, or sign 0
/// with the empty index when an entry repeats.
pub fn normalize_index(seq: &[u32]) -> (i8, PluckerIndex) {
    let mut inversions = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            match seq[i].cmp(&seq[j]) {
                std::cmp::Ordering::Greater => inversions += 1,
                std::cmp::Ordering::Equal => return (0, PluckerIndex(Vec::new())),
                std::cmp::Ordering::Less => {}
            }
        }
    }
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    (if inversions % 2 == 0 { 1 } else { -1 }, PluckerIndex(sorted))
}

pub type Monomial = Vec<PluckerIndex>;

/// Integer polynomial in Plücker variables. Monomials are sorted multisets
/// of indices and no zero coefficient is stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PluckerPolynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl PluckerPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Self::zero();
        p.add_term(Vec::new(), c);
        p
    }

    /// The signed variable `P_seq`, zero when `seq` has a repeat.
    pub fn var(seq: &[u32]) -> Self {
        Self::signed_product(&[seq])
    }

    /// Product of signed variables, each normalized.
    pub fn signed_product<S: AsRef<[u32]>>(seqs: &[S]) -> Self {
        let mut sign = 1i8;
        let mut mono = Vec::with_capacity(seqs.len());
        for s in seqs {
            let (sg, idx) = normalize_index(s.as_ref());
            if sg == 0 {
                return Self::zero();
            }
            sign *= sg;
            mono.push(idx);
        }
        mono.sort();
        let mut p = Self::zero();
        p.add_term(mono, BigInt::from(sign));
        p
    }

    pub fn add_term(&mut self, mut mono: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        mono.sort();
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &[PluckerIndex]) -> BigInt {
        let mut key = mono.to_vec();
        key.sort();
        self.terms.get(&key).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PluckerPolynomial {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Applies `f` to every variable; `f` returns the image monomial and a
    /// sign, or `None` when the image vanishes.
    pub fn map_variables<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&PluckerIndex) -> Result<Option<(i8, PluckerIndex)>>,
    {
        let mut out = Self::zero();
        'terms: for (mono, c) in &self.terms {
            let mut sign = 1i8;
            let mut image = Vec::with_capacity(mono.len());
            for idx in mono {
                match f(idx)? {
                    Some((s, j)) => {
                        sign *= s;
                        image.push(j);
                    }
                    None => continue 'terms,
                }
            }
            out.add_term(image, c * BigInt::from(sign));
        }
        Ok(out)
    }

    /// Multidegree: for each monomial, the sorted cardinalities of its
    /// factors. Homogeneous polynomials have a single entry.
    pub fn degrees(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .terms
            .keys()
            .map(|m| {
                let mut d: Vec<usize> = m.iter().map(PluckerIndex::len).collect();
                d.sort_unstable();
                d
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degrees().len() <= 1
    }

    /// Formats with an explicit leading sign, e.g. `+P_{345}`.
    pub fn to_signed_string(&self) -> String {
        let s = self.to_string();
        if s.starts_with('-') {
            s
        } else {
            format!("+{s}")
        }
    }
}

impl fmt::Display for PluckerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}")?;
            }
            for idx in mono {
                write!(f, "{idx}")?;
            }
        }
        Ok(())
    }
}

impl Add for &PluckerPolynomial {
    type Output = PluckerPolynomial;
    fn add(self, rhs: &PluckerPolynomial) -> PluckerPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &PluckerPolynomial {
    type Output = PluckerPolynomial;
    fn sub(self, rhs: &PluckerPolynomial) -> PluckerPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &PluckerPolynomial {
    type Output = PluckerPolynomial;
    fn neg(self) -> PluckerPolynomial {
        PluckerPolynomial {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl Mul for &PluckerPolynomial {
    type Output = PluckerPolynomial;
    fn mul(self, rhs: &PluckerPolynomial) -> PluckerPolynomial {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let mut m: Monomial = a.iter().chain(b.iter()).cloned().collect();
                m.sort();
                *acc.entry(m).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        PluckerPolynomial {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    coeff: String,
    monomial: Vec<Vec<u32>>,
}

impl Serialize for PluckerPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<JsonTerm> = self
            .terms
            .iter()
            .map(|(m, c)| JsonTerm {
                coeff: c.to_string(),
                monomial: m.iter().map(|i| i.0.clone()).collect(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PluckerPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<JsonTerm>::deserialize(d)?;
        let mut p = PluckerPolynomial::zero();
        for t in terms {
            let c: BigInt = t.coeff.parse().map_err(serde::de::Error::custom)?;
            let q = PluckerPolynomial::signed_product(&t.monomial).scale(&c);
            p = &p + &q;
        }
        Ok(p)
    }
}

/// `R^s_{J,L} = P_J P_L - Σ P_{J'} P_{L'}`, exchanging the first `s`
/// entries of `J` with every choice of `s` positions of `L`, in place.
pub fn plucker_relation(s: usize, j: &[u32], l: &[u32]) -> Result<PluckerPolynomial> {
    if s == 0 || s > j.len() || j.len() > l.len() {
        return Err(PluckerError::InvalidParameters(format!(
            "need 1 <= s={s} <= |J|={} <= |L|={}",
            j.len(),
            l.len()
        )));
    }
    let mut rel = PluckerPolynomial::signed_product(&[j, l]);
    for positions in combinations(l.len(), s) {
        let mut l2 = l.to_vec();
        let mut j2 = j.to_vec();
        for (t, &r) in positions.iter().enumerate() {
            l2[r] = j[t];
            j2[t] = l[r];
        }
        rel = &rel - &PluckerPolynomial::signed_product(&[j2, l2]);
    }
    Ok(rel)
}

/// All `s`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s);
    fn go(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < s - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, s, cur, out);
            cur.pop();
        }
    }
    go(0, n, s, &mut cur, &mut out);
    out
}

/// `φ*`: `P_I ↦ P_{I ∪ [n+1, n+d_k-|I|]}`.
pub fn embed_phi_star(f: &PluckerPolynomial, n: u32, dims: &[u32]) -> Result<PluckerPolynomial> {
    let dk = *dims
        .last()
        .ok_or_else(|| PluckerError::InvalidParameters("empty dimension list".into()))?;
    f.map_variables(|idx| {
        let d = idx.len() as u32;
        if !dims.contains(&d) || idx.0.iter().any(|&x| x > n) {
            return Err(PluckerError::BadCardinality(idx.0.clone()));
        }
        let mut e = idx.0.clone();
        e.extend(n + 1..=n + dk - d);
        Ok(Some((1, PluckerIndex(e))))
    })
}

/// `Δ_{[i,d]} = P_{[1,i-1] ∪ [n-d+i, n]}`.
pub fn interval_minor_to_plucker(i: u32, d: u32, n: u32) -> Result<PluckerPolynomial> {
    if !(1 <= i && i <= d && d <= n) {
        return Err(PluckerError::InvalidParameters(format!("need 1 <= {i} <= {d} <= {n}")));
    }
    let idx: Vec<u32> = (1..i).chain(n - d + i..=n).collect();
    Ok(PluckerPolynomial::var(&idx))
}

fn laplace_raw(i_j: u32, d_j: u32, i_next: u32, d_next: u32, n: u32) -> Result<(PluckerPolynomial, Monomial)> {
    if !(1 <= i_j && i_j <= d_j && d_j < i_next && i_next <= d_next && d_next <= n) {
        return Err(PluckerError::InvalidParameters(format!(
            "need 1 <= {i_j} <= {d_j} < {i_next} <= {d_next} <= {n}"
        )));
    }
    let ell = (n + i_j + i_next) as i64 - (d_j + d_next) as i64 - 1;
    if ell < 1 {
        return Err(PluckerError::InvalidParameters(format!("l = {ell} < 1")));
    }
    let ell = ell as u32;
    let window: Vec<u32> = (ell..=n).collect();
    let m = (d_j - i_j + 1) as usize;
    let row_sum: u32 = (i_j..=d_j).sum();
    let mut poly = PluckerPolynomial::zero();
    let mut leading = None;
    let lead_jp: Vec<u32> = (n - d_next + i_next..=n).collect();
    for pos in combinations(window.len(), m) {
        let jset: Vec<u32> = pos.iter().map(|&p| window[p]).collect();
        let jprime: Vec<u32> = window.iter().copied().filter(|x| !jset.contains(x)).collect();
        let sigma = row_sum + jset.iter().sum::<u32>();
        let first: Vec<u32> = (1..i_j).chain(jset.iter().copied()).collect();
        let second: Vec<u32> = (1..i_next).chain(jprime.iter().copied()).collect();
        let term = if second.len() as u32 == n {
            // The full minor P_{[n]} is the determinant, identically 1.
            let (sg, _) = normalize_index(&second);
            if sg == 0 {
                continue;
            }
            PluckerPolynomial::var(&first).scale(&BigInt::from(sg))
        } else {
            PluckerPolynomial::signed_product(&[&first, &second])
        };
        if term.is_zero() {
            continue;
        }
        if jprime == lead_jp {
            leading = term.terms().next().map(|(mono, _)| mono.clone());
        }
        let term = if sigma % 2 == 0 { term } else { -&term };
        poly = &poly + &term;
    }
    let leading = leading.ok_or_else(|| PluckerError::InvalidParameters("no leading term".into()))?;
    Ok((poly, leading))
}

/// Laplace expansion of the two-interval initial minor
/// `Δ_{[i_j,d_j] ∪ [i_next,d_next]}`, signed so that the standard monomial
/// of the initial tableau has coefficient `+1`.
pub fn laplace_initial_minor(i_j: u32, d_j: u32, i_next: u32, d_next: u32, n: u32) -> Result<PluckerPolynomial> {
    let (poly, lead) = laplace_raw(i_j, d_j, i_next, d_next, n)?;
    Ok(if poly.coefficient(&lead).is_negative() { -&poly } else { poly })
}

/// Whether the textbook sign `(-1)^{Σ rows + Σ J}` had to be flipped to make
/// the leading coefficient `+1`.
pub fn laplace_sign_flipped(i_j: u32, d_j: u32, i_next: u32, d_next: u32, n: u32) -> Result<bool> {
    let (poly, lead) = laplace_raw(i_j, d_j, i_next, d_next, n)?;
    Ok(poly.coefficient(&lead).is_negative())
}

/// `P_T`: product of the column variables of `T`.
pub fn standard_monomial(t: &Tableau) -> PluckerPolynomial {
    PluckerPolynomial::signed_product(&t.columns())
}

/// A matrix over `Z/p`; `P_I` is the minor on the top `|I|` rows and the
/// columns `I`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluationPoint {
    pub matrix: Vec<Vec<u64>>,
    pub prime: u64,
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    add_mod(a, p - b % p, p)
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    (a % p != 0).then(|| pow_mod(a, p - 2, p))
}

/// Reduces an integer into `[0, p)`.
pub fn bigint_mod(c: &BigInt, p: u64) -> u64 {
    let r = c % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Determinant modulo `p` by Gaussian elimination.
pub fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if piv != c {
            m.swap(piv, c);
            det = (p - det) % p;
        }
        det = mul_mod(det, m[c][c], p);
        let inv = inv_mod(m[c][c], p).expect("nonzero pivot");
        for r in c + 1..n {
            if m[r][c] == 0 {
                continue;
            }
            let factor = mul_mod(m[r][c], inv, p);
            for cc in c..n {
                let sub = mul_mod(factor, m[c][cc], p);
                m[r][cc] = sub_mod(m[r][cc], sub, p);
            }
        }
    }
    det
}

impl EvaluationPoint {
    pub fn new(matrix: Vec<Vec<u64>>, prime: u64) -> Result<Self> {
        if !is_prime(prime) {
            return Err(PluckerError::NotPrime(prime));
        }
        let matrix = matrix.into_iter().map(|r| r.into_iter().map(|x| x % prime).collect()).collect();
        Ok(EvaluationPoint { matrix, prime })
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn cols(&self) -> usize {
        self.matrix.first().map_or(0, Vec::len)
    }

    /// Minor with the given 1-based rows and columns.
    pub fn minor(&self, rows: &[u32], cols: &[u32]) -> Result<u64> {
        if rows.len() != cols.len()
            || rows.iter().any(|&r| r == 0 || r as usize > self.rows())
            || cols.iter().any(|&c| c == 0 || c as usize > self.cols())
        {
            return Err(PluckerError::OutOfRange(cols.to_vec(), self.rows(), self.cols()));
        }
        let sub = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| self.matrix[r as usize - 1][c as usize - 1]).collect())
            .collect();
        Ok(det_mod(sub, self.prime))
    }

    /// `P_I` on this point.
    pub fn plucker(&self, idx: &PluckerIndex) -> Result<u64> {
        let rows: Vec<u32> = (1..=idx.len() as u32).collect();
        self.minor(&rows, &idx.0)
    }

    /// The unipotent minor `D_{I, [n-|I|+1, n]}`.
    pub fn last_columns_minor(&self, rows: &[u32]) -> Result<u64> {
        let n = self.cols() as u32;
        let m = rows.len() as u32;
        let cols: Vec<u32> = (n - m + 1..=n).collect();
        self.minor(rows, &cols)
    }
}

/// Evaluates `f` at `pt` modulo the point's prime.
pub fn evaluate(f: &PluckerPolynomial, pt: &EvaluationPoint) -> Result<u64> {
    let p = pt.prime;
    let mut cache: HashMap<&PluckerIndex, u64> = HashMap::new();
    let mut total = 0u64;
    for (mono, c) in f.terms() {
        let mut v = bigint_mod(c, p);
        for idx in mono {
            let x = match cache.get(idx) {
                Some(&x) => x,
                None => {
                    let x = pt.plucker(idx)?;
                    cache.insert(idx, x);
                    x
                }
            };
            v = mul_mod(v, x, p);
        }
        total = add_mod(total, v, p);
    }
    Ok(total)
}

/// Independent random stream for trial `stream` under master seed `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniformly random `rows x cols` matrix over `Z/p`.
pub fn random_point(rows: usize, cols: usize, prime: u64, rng_seed: u64) -> EvaluationPoint {
    let mut rng = trial_rng(rng_seed, 0x5eed);
    let matrix = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(0..prime)).collect())
        .collect();
    EvaluationPoint { matrix, prime }
}

/// Whether `(r, c)` (1-based) is a free entry of `U_{dims;n}`.
pub fn unipotent_free_entry(n: u32, dims: &[u32], r: u32, c: u32) -> bool {
    let block = |x: u32| dims.iter().filter(|&&d| d < x).count();
    c > r && c <= n && block(r) != block(c)
}

/// Random element of the unipotent group `U_{dims;n}`: unit diagonal, free
/// entries above the diagonal outside the diagonal blocks.
pub fn random_unipotent_point(n: u32, dims: &[u32], prime: u64, rng_seed: u64) -> EvaluationPoint {
    let mut rng = trial_rng(rng_seed, 0x0u64.wrapping_add(7));
    let matrix = (1..=n)
        .map(|r| {
            (1..=n)
                .map(|c| {
                    if r == c {
                        1
                    } else if unipotent_free_entry(n, dims, r, c) {
                        rng.gen_range(0..prime)
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();
    EvaluationPoint { matrix, prime }
}

/// Bracket notation of the kinematic coordinate dictionaries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bracket {
    Angle(Vec<u32>),
    Square(u32, u32),
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| {
            let sep = if v.iter().all(|&x| x < 10) { "" } else { "," };
            v.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
        };
        match self {
            Bracket::Angle(v) => write!(f, "<{}>", join(v)),
            Bracket::Square(i, j) => write!(f, "[{}]", join(&[*i, *j])),
        }
    }
}

impl std::str::FromStr for Bracket {
    type Err = PluckerError;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || PluckerError::BadBracket(s.to_string());
        let t = s.trim();
        let (open, close, square) = if t.starts_with('[') {
            ('[', ']', true)
        } else if t.starts_with('<') {
            ('<', '>', false)
        } else if t.starts_with('⟨') {
            ('⟨', '⟩', false)
        } else {
            return Err(bad());
        };
        let inner = t.strip_prefix(open).and_then(|x| x.strip_suffix(close)).ok_or_else(bad)?;
        let entries: Vec<u32> = if inner.contains([',', ' ']) {
            inner
                .split([',', ' '])
                .filter(|x| !x.is_empty())
                .map(|x| x.parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            inner
                .chars()
                .map(|ch| ch.to_digit(10).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        if entries.is_empty() || entries.contains(&0) {
            return Err(bad());
        }
        if square {
            match entries[..] {
                [i, j] => Ok(Bracket::Square(i, j)),
                _ => Err(bad()),
            }
        } else {
            Ok(Bracket::Angle(entries))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kinematics {
    /// Spinor helicity, `SH_n ≅ Fl_{2,n-2;n}`.
    Sh,
    /// Momentum twistors, `MT_n ≅ Fl_{2,4;n}`.
    Mt,
}

/// Translates a bracket into Plücker coordinates:
/// SH: `<ij> ↦ P_ij`, `[ij] ↦ (-1)^{i+j-1} P_{[n] \ {i,j}}`;
/// MT: `<ij> ↦ P_ij`, `<ijkl> ↦ P_ijkl`. Unsorted brackets are antisymmetric.
pub fn translate(kind: Kinematics, n: u32, b: &Bracket) -> Result<PluckerPolynomial> {
    let bad = || PluckerError::BadBracket(b.to_string());
    match b {
        Bracket::Angle(v) => {
            let ok = match kind {
                Kinematics::Sh => v.len() == 2,
                Kinematics::Mt => v.len() == 2 || v.len() == 4,
            };
            if !ok || v.iter().any(|&x| x > n) {
                return Err(bad());
            }
            Ok(PluckerPolynomial::var(v))
        }
        Bracket::Square(i, j) => {
            if kind != Kinematics::Sh || *i > n || *j > n {
                return Err(bad());
            }
            let (sg, idx) = normalize_index(&[*i, *j]);
            if sg == 0 {
                return Ok(PluckerPolynomial::zero());
            }
            let (a, c) = (idx.0[0], idx.0[1]);
            let rest: Vec<u32> = (1..=n).filter(|&x| x != a && x != c).collect();
            let sign = if (a + c - 1) % 2 == 0 { 1 } else { -1 } * sg as i32;
            Ok(PluckerPolynomial::var(&rest).scale(&BigInt::from(sign)))
        }
    }
}

/// Full dictionary of sorted brackets for `SH_n`.
pub fn sh_coordinates(n: u32) -> Vec<(Bracket, PluckerPolynomial)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for b in [Bracket::Angle(vec![i, j]), Bracket::Square(i, j)] {
                let p = translate(Kinematics::Sh, n, &b).expect("valid bracket");
                out.push((b, p));
            }
        }
    }
    out
}

/// Full dictionary of sorted brackets for `MT_n`.
pub fn mt_coordinates(n: u32) -> Vec<(Bracket, PluckerPolynomial)> {
    let mut out = Vec::new();
    for size in [2usize, 4] {
        for c in combinations(n as usize, size) {
            let v: Vec<u32> = c.iter().map(|&x| x as u32 + 1).collect();
            let b = Bracket::Angle(v);
            let p = translate(Kinematics::Mt, n, &b).expect("valid bracket");
            out.push((b, p));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(v: &[&[u32]]) -> Monomial {
        let mut m: Monomial = v.iter().map(|x| PluckerIndex::from_sorted(x.to_vec())).collect();
        m.sort();
        m
    }

    #[test]
    fn normalization_signs() {
        assert_eq!(normalize_index(&[2, 1]), (-1, PluckerIndex(vec![1, 2])));
        assert_eq!(normalize_index(&[1, 1]).0, 0);
        assert_eq!(normalize_index(&[3, 1, 2]), (1, PluckerIndex(vec![1, 2, 3])));
    }

    #[test]
    fn schouten_identity() {
        let r = plucker_relation(1, &[1, 3], &[2, 4]).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r.coefficient(&mono(&[&[1, 3], &[2, 4]])), BigInt::from(1));
        assert_eq!(r.coefficient(&mono(&[&[1, 2], &[3, 4]])), BigInt::from(-1));
        assert_eq!(r.coefficient(&mono(&[&[1, 4], &[2, 3]])), BigInt::from(-1));
        assert!(plucker_relation(2, &[1, 2], &[1, 2]).unwrap().is_zero());
        assert!(plucker_relation(3, &[1, 2], &[1, 2]).is_err());
    }

    #[test]
    fn phi_star_appends() {
        let p = PluckerPolynomial::var(&[1, 3]);
        assert_eq!(embed_phi_star(&p, 6, &[2, 4]).unwrap(), PluckerPolynomial::var(&[1, 3, 7, 8]));
        let q = PluckerPolynomial::var(&[1, 2, 3, 5]);
        assert_eq!(embed_phi_star(&q, 6, &[2, 4]).unwrap(), q);
        assert!(embed_phi_star(&PluckerPolynomial::var(&[1, 2, 3]), 6, &[2, 4]).is_err());
    }

    #[test]
    fn interval_minors() {
        assert_eq!(interval_minor_to_plucker(1, 3, 6).unwrap(), PluckerPolynomial::var(&[4, 5, 6]));
        assert_eq!(interval_minor_to_plucker(2, 2, 5).unwrap(), PluckerPolynomial::var(&[1, 5]));
    }

    #[test]
    fn bracket_parsing_and_translation() {
        let b: Bracket = "[12]".parse().unwrap();
        assert_eq!(translate(Kinematics::Sh, 5, &b).unwrap().to_signed_string(), "+P_{345}");
        let b: Bracket = "[23]".parse().unwrap();
        assert_eq!(translate(Kinematics::Sh, 5, &b).unwrap().to_signed_string(), "+P_{145}");
        let b: Bracket = "<13>".parse().unwrap();
        assert_eq!(translate(Kinematics::Mt, 6, &b).unwrap(), PluckerPolynomial::var(&[1, 3]));
        let b: Bracket = "<1,2,10,11>".parse().unwrap();
        assert_eq!(b, Bracket::Angle(vec![1, 2, 10, 11]));
        assert!("(12)".parse::<Bracket>().is_err());
    }

    #[test]
    fn primes_and_determinants() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(!is_prime(DEFAULT_PRIME - 2));
        let p = 101;
        assert_eq!(det_mod(vec![vec![1, 2], vec![3, 4]], p), p - 2);
    }

    #[test]
    fn json_roundtrip() {
        let r = plucker_relation(1, &[1, 3], &[2, 4]).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: PluckerPolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn laplace_examples() {
        let f245 = laplace_initial_minor(1, 2, 4, 4, 5).unwrap();
        let want = &PluckerPolynomial::signed_product(&[&[1u32, 2, 3, 5][..], &[3, 4]])
            - &PluckerPolynomial::signed_product(&[&[1u32, 2, 3, 4][..], &[3, 5]]);
        assert_eq!(f245, want);
        let f246 = laplace_initial_minor(1, 2, 4, 4, 6).unwrap();
        let want = &(&PluckerPolynomial::signed_product(&[&[1u32, 2, 3, 4][..], &[5, 6]])
            - &PluckerPolynomial::signed_product(&[&[1u32, 2, 3, 5][..], &[4, 6]]))
            + &PluckerPolynomial::signed_product(&[&[1u32, 2, 3, 6][..], &[4, 5]]);
        assert_eq!(f246, want);
    }

    #[test]
    fn laplace_matches_unipotent_minor() {
        for n in 3..=7u32 {
            for d in 1..n {
                for dn in d + 1..=n {
                    for ij in 1..=d {
                        for inext in d + 1..=dn {
                            if n + ij + inext < d + dn + 2 {
                                continue;
                            }
                            let f = laplace_initial_minor(ij, d, inext, dn, n).unwrap();
                            let rows: Vec<u32> = (ij..=d).chain(inext..=dn).collect();
                            for t in 0..3 {
                                let u = random_unipotent_point(n, &[d, dn], DEFAULT_PRIME, t);
                                assert_eq!(evaluate(&f, &u).unwrap(), u.last_columns_minor(&rows).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }
}
