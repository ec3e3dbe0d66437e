use std::fmt;

/// Exponent vector over a fixed generator order. Trailing zeros are trimmed,
/// so the empty vector is the unit and equal monomials compare equal
/// regardless of how many generators the ambient algebra has.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn from_exponents(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Monomial(exponents)
    }

    pub fn generator(index: usize) -> Self {
        Self::generator_power(index, 1)
    }

    pub fn generator_power(index: usize, power: u32) -> Self {
        let mut e = vec![0; index + 1];
        e[index] = power;
        Self::from_exponents(e)
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Number of generator factors counted with multiplicity.
    pub fn word_length(&self) -> u32 {
        self.0.iter().sum()
    }

    /// One past the largest generator index that occurs.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    /// The factors in normal order, repeated according to their exponent.
    pub fn factors(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize))
            .collect()
    }

    /// If this monomial is a single generator, its index.
    pub fn as_generator(&self) -> Option<usize> {
        (self.word_length() == 1).then(|| self.0.len() - 1)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{:?}", self.0)
    }
}
