//! Integer partitions, compositions, and the combinatorial constants
//! attached to them.

use num_bigint::BigInt;
use num_traits::One;

use crate::rational::{factorial, Rational};
use crate::{Error, Result};

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    pub fn new(mut parts: Vec<u64>) -> Self {
        assert!(parts.iter().all(|&p| p > 0), "parts must be positive");
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    /// |mu|
    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// ell(mu)
    pub fn length(&self) -> u64 {
        self.parts.len() as u64
    }

    /// m_i(mu)
    pub fn multiplicity(&self, i: u64) -> u64 {
        self.parts.iter().filter(|&&p| p == i).count() as u64
    }

    /// (part, multiplicity) pairs, decreasing in part.
    pub fn multiplicities(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn odd_part(&self) -> Partition {
        Partition {
            parts: self.parts.iter().copied().filter(|p| p % 2 == 1).collect(),
        }
    }

    pub fn even_part(&self) -> Partition {
        Partition {
            parts: self.parts.iter().copied().filter(|p| p % 2 == 0).collect(),
        }
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of d in reverse lexicographic order: (d), ..., (1^d).
pub fn partitions_of(d: u64) -> Vec<Partition> {
    if d == 0 {
        return vec![Partition::empty()];
    }
    let mut out = Vec::new();
    let mut current = vec![d];
    loop {
        out.push(Partition {
            parts: current.clone(),
        });
        // Find the last part > 1; everything after it is a run of 1s.
        let Some(pos) = current.iter().rposition(|&p| p > 1) else {
            break;
        };
        let ones = current.len() - pos - 1;
        let value = current[pos] - 1;
        current.truncate(pos);
        // Redistribute (value + ones + 1) as parts of size <= value.
        let mut rest = value + ones as u64 + 1;
        while rest > 0 {
            let next = rest.min(value);
            current.push(next);
            rest -= next;
        }
    }
    out
}

/// z_mu, eps_mu, u_mu, length, odd/even split.
pub struct PartitionConstants {
    pub z: BigInt,
    pub eps: i64,
    pub u: BigInt,
    pub length: u64,
    pub odd: Partition,
    pub even: Partition,
}

pub fn partition_constants(mu: &Partition) -> PartitionConstants {
    let mut z = BigInt::one();
    for (part, m) in mu.multiplicities() {
        z *= BigInt::from(part).pow(m as u32);
        z *= factorial(m);
    }
    let eps = if (mu.size() - mu.length()).is_multiple_of(2) {
        1
    } else {
        -1
    };
    let mults: Vec<u64> = mu.multiplicities().iter().map(|&(_, m)| m).collect();
    let u = multinomial(mu.length(), &mults).expect("multiplicities sum to length");
    PartitionConstants {
        z,
        eps,
        u,
        length: mu.length(),
        odd: mu.odd_part(),
        even: mu.even_part(),
    }
}

/// Streaming enumeration of the compositions of n into k non-negative
/// parts, in lexicographic order.
pub struct Compositions {
    next: Option<Vec<u64>>,
}

pub fn compositions(n: u64, k: u64) -> Compositions {
    assert!(k >= 1, "compositions need at least one part");
    let mut first = vec![0u64; k as usize];
    *first.last_mut().unwrap() = n;
    Compositions { next: Some(first) }
}

impl Iterator for Compositions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        let k = current.len();
        // Advance: find the rightmost index j < k-1 with mass to its right,
        // increment it, and push the remaining mass to the last slot.
        let mut suffix = 0u64;
        let mut advanced = None;
        for j in (0..k.saturating_sub(1)).rev() {
            suffix += current[j + 1];
            if suffix > 0 {
                let mut next = current[..=j].to_vec();
                next[j] += 1;
                next.resize(k, 0);
                next[k - 1] = suffix - 1;
                advanced = Some(next);
                break;
            }
        }
        self.next = advanced;
        Some(current)
    }
}

pub fn composition_count(n: u64, k: u64) -> BigInt {
    crate::rational::binomial(n + k - 1, k - 1)
}

/// n! / prod parts[i]!, validating sum(parts) = n.
pub fn multinomial(n: u64, parts: &[u64]) -> Result<BigInt> {
    let total: u64 = parts.iter().sum();
    if total != n {
        return Err(Error::BadMultinomial {
            expected: n,
            got: total,
        });
    }
    let mut acc = BigInt::one();
    let mut used = 0u64;
    for &p in parts {
        // incrementally multiply binomial(used + p, p)
        acc *= crate::rational::binomial(used + p, p);
        used += p;
    }
    Ok(acc)
}

/// Falling-factorial binomial coefficient with rational top argument:
/// alpha (alpha-1) ... (alpha-d+1) / d!.
pub fn binomial_rational(alpha: &Rational, d: u64) -> Rational {
    let mut num = Rational::one();
    for i in 0..d {
        num *= alpha - crate::rational::rat_i(i as i64);
    }
    num / Rational::from_integer(factorial(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{big, rat};
    use num_traits::Zero;

    #[test]
    fn partitions_reverse_lex() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        let p3 = partitions_of(3);
        assert_eq!(
            p3,
            vec![
                Partition::new(vec![3]),
                Partition::new(vec![2, 1]),
                Partition::new(vec![1, 1, 1])
            ]
        );
        assert_eq!(partitions_of(5).len(), 7);
        assert_eq!(partitions_of(10).len(), 42);
    }

    #[test]
    fn constants() {
        let c = partition_constants(&Partition::new(vec![2, 1]));
        assert_eq!(c.z, big(2));
        assert_eq!(c.eps, -1);
        assert_eq!(c.u, big(2));
        assert_eq!(c.odd, Partition::new(vec![1]));
        assert_eq!(c.even, Partition::new(vec![2]));

        let c = partition_constants(&Partition::new(vec![1, 1, 1]));
        assert_eq!(c.z, big(6));
        assert_eq!(c.eps, 1);
        assert_eq!(c.u, big(1));

        let c = partition_constants(&Partition::new(vec![3]));
        assert_eq!(c.z, big(3));
        assert_eq!(c.eps, 1);
        assert_eq!(c.u, big(1));
        assert_eq!(c.even, Partition::empty());
    }

    #[test]
    fn eps_equals_product_over_parts() {
        // (-1)^(|mu| - ell) = prod (-1)^(part - 1)
        for d in 0..=8u64 {
            for mu in partitions_of(d) {
                let c = partition_constants(&mu);
                let prod: i64 = mu
                    .parts()
                    .iter()
                    .map(|&p| if (p - 1) % 2 == 0 { 1 } else { -1 })
                    .product();
                assert_eq!(c.eps, prod);
            }
        }
    }

    #[test]
    fn compositions_lex_order_and_count() {
        let all: Vec<_> = compositions(2, 2).collect();
        assert_eq!(all, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        let all: Vec<_> = compositions(0, 3).collect();
        assert_eq!(all, vec![vec![0, 0, 0]]);
        assert_eq!(compositions(4, 3).count(), 15);
        for n in 0..=12u64 {
            for k in 1..=6u64 {
                let count = compositions(n, k).count();
                assert_eq!(BigInt::from(count), composition_count(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(4, &[2, 2]).unwrap(), big(6));
        assert_eq!(multinomial(7, &[7]).unwrap(), big(1));
        assert_eq!(multinomial(5, &[2, 2, 1]).unwrap(), big(30));
        assert!(multinomial(5, &[2, 2]).is_err());
    }

    #[test]
    fn rational_binomials() {
        assert_eq!(binomial_rational(&rat(1, 2), 1), rat(1, 2));
        assert_eq!(binomial_rational(&rat(-1, 2), 1), rat(-1, 2));
        assert_eq!(binomial_rational(&rat(-1, 2), 2), rat(3, 8));
        assert_eq!(binomial_rational(&rat(7, 1), 0), rat(1, 1));
    }

    #[test]
    fn newton_identity_smoke() {
        // sum over partitions of eps^omega_mu / z_mu * n^(ell) specializes
        // the elementary/complete generating identity: equals C(n, d) for
        // the strict case and C(n+d-1, d) for the weak case.
        for n in 1..=5u64 {
            for d in 0..=5u64 {
                let mut strict = Rational::zero();
                let mut weak = Rational::zero();
                for mu in partitions_of(d) {
                    let c = partition_constants(&mu);
                    let z = Rational::from_integer(c.z.clone());
                    let npow = Rational::from_integer(BigInt::from(n).pow(c.length as u32));
                    strict += Rational::from_integer(BigInt::from(c.eps)) * &npow / &z;
                    weak += npow / z;
                }
                assert_eq!(
                    strict,
                    Rational::from_integer(crate::rational::binomial(n, d)),
                    "e_{d}(1^{n})"
                );
                assert_eq!(
                    weak,
                    Rational::from_integer(crate::rational::binomial(n + d - 1, d)),
                    "h_{d}(1^{n})"
                );
            }
        }
    }
}
