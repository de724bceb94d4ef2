use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An integer vector of fixed length, the carrier of divisor classes,
/// exponent vectors and one-skeleton rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<BigInt>);

impl LatticeVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        LatticeVector(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        LatticeVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zeros(len: usize) -> Self {
        LatticeVector(vec![BigInt::zero(); len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = vec![BigInt::zero(); len];
        v[i] = BigInt::one();
        LatticeVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.0[i]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &LatticeVector) -> BigInt {
        assert_eq!(self.len(), other.len(), "dot product of vectors of unequal length");
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, c: &BigInt) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * c).collect())
    }

    /// gcd of the entries; zero for the zero vector.
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, a| g.gcd(a))
    }

    /// Divides by the content, keeping the direction.
    pub fn primitive(&self) -> LatticeVector {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        LatticeVector(self.0.iter().map(|a| a / &g).collect())
    }

    pub fn is_primitive(&self) -> bool {
        let g = self.content();
        g.is_zero() || g.is_one()
    }

    /// Primitive with the first nonzero entry positive. Used for lines and
    /// lattice-basis elements, where the direction carries no meaning.
    pub fn normalized(&self) -> LatticeVector {
        let p = self.primitive();
        match p.0.iter().find(|a| !a.is_zero()) {
            Some(a) if a.is_negative() => -&p,
            _ => p,
        }
    }

    /// Integer multiple of a rational vector with coprime entries and the
    /// same direction.
    pub fn from_rational_direction(entries: &[BigRational]) -> LatticeVector {
        let lcm = entries.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
        let ints: Vec<BigInt> = entries.iter().map(|q| (q * BigRational::from(lcm.clone())).to_integer()).collect();
        LatticeVector(ints).primitive()
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.0.iter().map(|a| BigRational::from(a.clone())).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|a| !a.is_negative())
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.0.iter().map(|a| a.to_i64()).collect()
    }

    /// Coordinates permuted so that entry `i` of the result is entry `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> LatticeVector {
        LatticeVector(perm.iter().map(|&j| self.0[j].clone()).collect())
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector::from_i64s(&v)
    }
}

impl<'a> Add for &'a LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &'a LatticeVector) -> LatticeVector {
        assert_eq!(self.len(), rhs.len());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl<'a> Sub for &'a LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &'a LatticeVector) -> LatticeVector {
        assert_eq!(self.len(), rhs.len());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl<'a> Neg for &'a LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Parses comma-separated integers, e.g. `"1,0,-2"`.
impl std::str::FromStr for LatticeVector {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(LatticeVector(Vec::new()));
        }
        s.split(',')
            .map(|t| t.trim().parse::<BigInt>().map_err(|e| format!("bad integer {t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(LatticeVector)
    }
}

impl Serialize for LatticeVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        super::serde_int::serialize_ints(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for LatticeVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        super::serde_int::deserialize_ints(d).map(LatticeVector)
    }
}

/// Parses `"1,0;0,1"` into a list of vectors.
pub fn parse_vector_list(s: &str) -> Result<Vec<LatticeVector>, String> {
    s.split(';').filter(|row| !row.trim().is_empty()).map(str::parse).collect()
}
