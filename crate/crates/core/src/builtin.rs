//! Builtin ring families and prime-field algebras given by structure
//! constants.
//!
//! Canonical element enumeration:
//! - `zmod:n`: id `k` is the residue `k`.
//! - algebras over `F_p` of dimension `d` (including `mat:k:p` and `tri2:p`):
//!   a coefficient vector `(v_0, .., v_{d-1})` has id `sum v_i p^(d-1-i)`, so
//!   ids are lexicographic with the first coordinate most significant.
//!   `mat:k:p` uses the row-major matrix entries as coordinates; `tri2:p`
//!   uses `(a, b, c)` for the matrix `[[a, 0], [b, c]]`.
//! - `prod:A,B,..`: the tuple `(x_A, x_B, ..)` is enumerated lexicographically
//!   with the first factor most significant.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::{validate_ring, FiniteRing, Limits, RawTables};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Tables(RawTables),
    /// Integers modulo `n`.
    ZMod(u64),
    /// Full `k×k` matrix algebra over `F_p`.
    Mat { k: u64, p: u64 },
    /// Lower-triangular `2×2` matrices over `F_p`.
    Tri2 { p: u64 },
    Product(Vec<RingSpec>),
    FpAlgebra(FpAlgebra),
}

/// An associative algebra over `F_p` with basis `e_0..e_{d-1}` and
/// `e_i e_j = sum_k structure_constants[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpAlgebra {
    pub p: u64,
    pub dim: usize,
    pub structure_constants: Vec<Vec<Vec<u64>>>,
    pub unit_vector: Vec<u64>,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn checked_order(requested: impl Fn() -> Option<u64>, label: String, cap: usize) -> Result<usize> {
    match requested() {
        Some(n) if n <= cap as u64 => Ok(n as usize),
        _ => Err(Error::OrderCap {
            requested: label,
            cap,
        }),
    }
}

impl RingSpec {
    /// Order of the ring this spec describes, or `None` on overflow.
    pub fn order(&self) -> Option<u64> {
        match self {
            RingSpec::Tables(t) => Some(t.order as u64),
            RingSpec::ZMod(n) => Some(*n),
            RingSpec::Mat { k, p } => p.checked_pow(u32::try_from(k.checked_mul(*k)?).ok()?),
            RingSpec::Tri2 { p } => p.checked_pow(3),
            RingSpec::Product(parts) => parts
                .iter()
                .try_fold(1u64, |acc, s| acc.checked_mul(s.order()?)),
            RingSpec::FpAlgebra(a) => a.p.checked_pow(u32::try_from(a.dim).ok()?),
        }
    }
}

impl FpAlgebra {
    pub fn matrices(k: usize, p: u64) -> Self {
        let dim = k * k;
        let mut sc = vec![vec![vec![0u64; dim]; dim]; dim];
        // E_ij E_jl = E_il
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    sc[i * k + j][j * k + l][i * k + l] = 1;
                }
            }
        }
        let mut unit = vec![0u64; dim];
        for i in 0..k {
            unit[i * k + i] = 1;
        }
        FpAlgebra {
            p,
            dim,
            structure_constants: sc,
            unit_vector: unit,
        }
    }

    pub fn lower_triangular_2x2(p: u64) -> Self {
        // basis E11, E21, E22
        let mut sc = vec![vec![vec![0u64; 3]; 3]; 3];
        sc[0][0][0] = 1;
        sc[1][0][1] = 1;
        sc[2][1][1] = 1;
        sc[2][2][2] = 1;
        FpAlgebra {
            p,
            dim: 3,
            structure_constants: sc,
            unit_vector: vec![1, 0, 1],
        }
    }

    fn check_shape(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        let d = self.dim;
        if self.unit_vector.len() != d {
            return Err(Error::Shape(format!(
                "unit_vector has {} entries, expected {d}",
                self.unit_vector.len()
            )));
        }
        if self.structure_constants.len() != d
            || self
                .structure_constants
                .iter()
                .any(|m| m.len() != d || m.iter().any(|row| row.len() != d))
        {
            return Err(Error::Shape(format!(
                "structure_constants must be {d}x{d}x{d}"
            )));
        }
        Ok(())
    }

    /// Expands the algebra to full tables. Associativity, unit and the rest
    /// are checked afterwards by `validate_ring`.
    pub fn expand(&self, limits: Limits) -> Result<RawTables> {
        self.check_shape()?;
        let p = self.p;
        let d = self.dim;
        let n = checked_order(
            || p.checked_pow(u32::try_from(d).ok()?),
            format!("{p}^{d}"),
            limits.max_order,
        )?;
        let coords = |mut id: usize| {
            let mut v = vec![0u64; d];
            for i in (0..d).rev() {
                v[i] = (id as u64) % p;
                id /= p as usize;
            }
            v
        };
        let encode = |v: &[u64]| v.iter().fold(0usize, |acc, &c| acc * p as usize + (c % p) as usize);
        let vectors: Vec<Vec<u64>> = (0..n).map(coords).collect();
        let add: Vec<Vec<i64>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let s: Vec<u64> = vectors[a]
                            .iter()
                            .zip(&vectors[b])
                            .map(|(x, y)| (x + y) % p)
                            .collect();
                        encode(&s) as i64
                    })
                    .collect()
            })
            .collect();
        // place values of the coordinates: e_j has id p^(d-1-j)
        let basis_id: Vec<usize> = (0..d).map(|j| (p as usize).pow((d - 1 - j) as u32)).collect();
        let mut mul = vec![vec![0i64; n]; n];
        for a in 0..n {
            let u = &vectors[a];
            // u * e_j for every basis vector
            let right_basis: Vec<usize> = (0..d)
                .map(|j| {
                    let mut out = vec![0u64; d];
                    for (i, &ui) in u.iter().enumerate() {
                        if ui == 0 {
                            continue;
                        }
                        for (k, o) in out.iter_mut().enumerate() {
                            *o = (*o + ui * (self.structure_constants[i][j][k] % p)) % p;
                        }
                    }
                    encode(&out)
                })
                .collect();
            let row = &mut mul[a];
            for b in 1..n {
                // peel one unit off the last nonzero coordinate of b
                let j = (0..d).rev().find(|&j| vectors[b][j] != 0).unwrap();
                let prev = b - basis_id[j];
                row[b] = add[row[prev] as usize][right_basis[j]];
            }
        }
        let one = encode(&self.unit_vector) as i64;
        Ok(RawTables {
            order: n,
            one,
            add,
            mul,
        })
    }
}

fn zmod_tables(n: usize) -> RawTables {
    let table = |f: &dyn Fn(usize, usize) -> usize| {
        (0..n)
            .map(|a| (0..n).map(|b| f(a, b) as i64).collect())
            .collect()
    };
    RawTables {
        order: n,
        one: (1 % n) as i64,
        add: table(&|a, b| (a + b) % n),
        mul: table(&|a, b| (a * b) % n),
    }
}

fn product_tables(parts: &[FiniteRing]) -> RawTables {
    let n: usize = parts.iter().map(|r| r.order()).product();
    let strides: Vec<usize> = (0..parts.len())
        .map(|i| parts[i + 1..].iter().map(|r| r.order()).product())
        .collect();
    let split = |mut id: usize| -> Vec<usize> {
        strides
            .iter()
            .map(|&s| {
                let c = id / s;
                id %= s;
                c
            })
            .collect()
    };
    let join = |c: &[usize]| c.iter().zip(&strides).map(|(x, s)| x * s).sum::<usize>();
    let comps: Vec<Vec<usize>> = (0..n).map(split).collect();
    let table = |op: &dyn Fn(&FiniteRing, usize, usize) -> usize| -> Vec<Vec<i64>> {
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let c: Vec<usize> = parts
                            .iter()
                            .enumerate()
                            .map(|(i, r)| op(r, comps[a][i], comps[b][i]))
                            .collect();
                        join(&c) as i64
                    })
                    .collect()
            })
            .collect()
    };
    let one: Vec<usize> = parts.iter().map(|r| r.one()).collect();
    RawTables {
        order: n,
        one: join(&one) as i64,
        add: table(&|r, x, y| r.add(x, y)),
        mul: table(&|r, x, y| r.mul(x, y)),
    }
}

/// Builds and validates the ring a spec describes.
pub fn build_builtin(spec: &RingSpec, limits: Limits) -> Result<FiniteRing> {
    let cap = limits.max_order;
    let raw = match spec {
        RingSpec::Tables(raw) => raw.clone(),
        RingSpec::ZMod(n) => {
            if *n == 0 {
                return Err(Error::RingSpec("zmod modulus must be positive".into()));
            }
            let n = checked_order(|| Some(*n), n.to_string(), cap)?;
            zmod_tables(n)
        }
        RingSpec::Mat { k, p } => {
            if !is_prime(*p) {
                return Err(Error::NotPrime(*p));
            }
            if *k == 0 {
                return Err(Error::RingSpec("matrix size must be positive".into()));
            }
            checked_order(|| spec.order(), format!("{p}^({k}*{k})"), cap)?;
            FpAlgebra::matrices(*k as usize, *p).expand(limits)?
        }
        RingSpec::Tri2 { p } => {
            if !is_prime(*p) {
                return Err(Error::NotPrime(*p));
            }
            checked_order(|| spec.order(), format!("{p}^3"), cap)?;
            FpAlgebra::lower_triangular_2x2(*p).expand(limits)?
        }
        RingSpec::Product(parts) => {
            if parts.is_empty() {
                return Err(Error::RingSpec("empty product".into()));
            }
            checked_order(|| spec.order(), "product".into(), cap)?;
            let rings = parts
                .iter()
                .map(|s| build_builtin(s, limits))
                .collect::<Result<Vec<_>>>()?;
            product_tables(&rings)
        }
        RingSpec::FpAlgebra(a) => a.expand(limits)?,
    };
    validate_ring(&raw, limits)
}

fn parse_u64(s: &str, what: &str) -> Result<u64> {
    s.trim()
        .parse::<u64>()
        .map_err(|_| Error::RingSpec(format!("bad {what} `{s}`")))
}

/// Splits on commas that are not nested inside parentheses.
fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::RingSpec(format!("unbalanced `)` in `{s}`")));
                }
            }
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::RingSpec(format!("unbalanced `(` in `{s}`")));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

impl FromStr for RingSpec {
    type Err = Error;

    /// Parses `zmod:n`, `tri2:p`, `mat:k:p` and `prod:spec,spec,..`.
    /// Nested products group their factors in parentheses, e.g.
    /// `prod:(prod:zmod:2,zmod:2),zmod:3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            return inner.parse();
        }
        let (head, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::RingSpec(format!("unknown ring `{s}`")))?;
        match head {
            "zmod" => Ok(RingSpec::ZMod(parse_u64(rest, "modulus")?)),
            "tri2" => Ok(RingSpec::Tri2 {
                p: parse_u64(rest, "characteristic")?,
            }),
            "mat" => {
                let (k, p) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::RingSpec(format!("expected mat:k:p, got `{s}`")))?;
                Ok(RingSpec::Mat {
                    k: parse_u64(k, "matrix size")?,
                    p: parse_u64(p, "characteristic")?,
                })
            }
            "prod" => {
                let parts = split_top_level(rest)?
                    .into_iter()
                    .map(str::parse)
                    .collect::<Result<Vec<RingSpec>>>()?;
                if parts.len() < 2 {
                    return Err(Error::RingSpec("prod needs at least two factors".into()));
                }
                Ok(RingSpec::Product(parts))
            }
            _ => Err(Error::RingSpec(format!("unknown ring family `{head}`"))),
        }
    }
}

pub fn zmod(n: u64) -> Result<FiniteRing> {
    build_builtin(&RingSpec::ZMod(n), Limits::default())
}

pub fn tri2(p: u64) -> Result<FiniteRing> {
    build_builtin(&RingSpec::Tri2 { p }, Limits::default())
}

pub fn mat(k: u64, p: u64) -> Result<FiniteRing> {
    build_builtin(&RingSpec::Mat { k, p }, Limits::default())
}
