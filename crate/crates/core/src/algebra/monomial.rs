use std::cmp::Ordering;

/// Exponent vector, one entry per variable of the owning ring.
///
/// The derived `Ord` compares exponent vectors lexicographically, which is
/// the lex monomial order with the first variable largest.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = exp;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// No variable occurs in both.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub(crate) fn with_exp(&self, i: usize, exp: u32) -> Monomial {
        let mut e = self.0.clone();
        e[i] = exp;
        Monomial(e)
    }

    /// Re-indexes the exponent vector into a ring of `nvars` variables;
    /// `map[i]` is the target index of source variable `i`.
    pub(crate) fn remap(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut e = vec![0; nvars];
        for (i, &x) in self.0.iter().enumerate() {
            if x > 0 {
                e[map[i]] += x;
            }
        }
        Monomial(e)
    }
}

/// Admissible monomial orders. Ties inside a degree are broken by the
/// variable order of the ring (first variable largest).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Lex,
    GradedLex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GradedLex => a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)),
        }
    }

    /// A key whose plain lexicographic comparison agrees with this order.
    pub(crate) fn key(&self, m: &Monomial) -> Vec<u32> {
        match self {
            MonomialOrder::Lex => m.0.clone(),
            MonomialOrder::GradedLex => {
                let mut k = Vec::with_capacity(m.len() + 1);
                k.push(m.degree());
                k.extend_from_slice(&m.0);
                k
            }
        }
    }

    pub(crate) fn unkey(&self, key: &[u32]) -> Monomial {
        match self {
            MonomialOrder::Lex => Monomial(key.to_vec()),
            MonomialOrder::GradedLex => Monomial(key[1..].to_vec()),
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "grlex" | "graded-lex" | "deglex" => Ok(MonomialOrder::GradedLex),
            other => Err(format!("unknown monomial order `{other}`")),
        }
    }
}
