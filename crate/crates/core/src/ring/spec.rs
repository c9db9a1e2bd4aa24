//! The ring-spec grammar shared by the CLI and config files:
//! `Z`, `Z/12`, `F5`, `Q`, `F2[t]`, `Q[x]`, `F2[x,y]/(x^2,xy,y^2)` and
//! `algebra:<path>`.

use std::path::Path;

use serde::Deserialize;

use super::{FiniteAlgebra, Integers, IntegersMod, PrimeField, Rationals, UniPoly};
use crate::error::{Error, Result};

/// A parsed base ring, one variant per supported family.
#[derive(Clone, Debug, PartialEq)]
pub enum RingSpec {
    Integers(Integers),
    IntegersMod(IntegersMod),
    PrimeField(PrimeField),
    Rationals(Rationals),
    PolyFp(UniPoly<PrimeField>),
    PolyQ(UniPoly<Rationals>),
    AlgebraFp(FiniteAlgebra<PrimeField>),
    AlgebraQ(FiniteAlgebra<Rationals>),
}

/// Alias kept for call sites that dispatch over "any" ring.
pub type AnyRing = RingSpec;

/// Runs `$body` with `$r` bound to the concrete ring inside a [`RingSpec`].
#[macro_export]
macro_rules! with_ring {
    ($spec:expr, $r:ident => $body:expr) => {
        match $spec {
            $crate::ring::RingSpec::Integers($r) => $body,
            $crate::ring::RingSpec::IntegersMod($r) => $body,
            $crate::ring::RingSpec::PrimeField($r) => $body,
            $crate::ring::RingSpec::Rationals($r) => $body,
            $crate::ring::RingSpec::PolyFp($r) => $body,
            $crate::ring::RingSpec::PolyQ($r) => $body,
            $crate::ring::RingSpec::AlgebraFp($r) => $body,
            $crate::ring::RingSpec::AlgebraQ($r) => $body,
        }
    };
}

/// On-disk structure-constant description of a finite algebra.
#[derive(Debug, Clone, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub unit: Vec<i64>,
    pub constants: Vec<Vec<Vec<i64>>>,
    /// Base field, `F<p>` or `Q`; defaults to `Q`.
    #[serde(default)]
    pub field: Option<String>,
    #[serde(default)]
    pub names: Option<Vec<String>>,
    #[serde(default)]
    pub name: Option<String>,
}

impl RingSpec {
    pub fn parse(s: &str) -> Result<RingSpec> {
        let t = s.trim();
        if let Some(path) = t.strip_prefix("algebra:") {
            return Self::load_algebra(Path::new(path.trim()));
        }
        if t == "Z" {
            return Ok(RingSpec::Integers(Integers));
        }
        if t == "Q" {
            return Ok(RingSpec::Rationals(Rationals));
        }
        if let Some(m) = t.strip_prefix("Z/") {
            let m: u64 = m.trim().parse().map_err(|_| Error::parse(2, format!("bad modulus '{m}'")))?;
            return Ok(RingSpec::IntegersMod(IntegersMod::new(m)?));
        }
        if let Some(open) = t.find('[') {
            let field = &t[..open];
            let close = t.find(']').ok_or_else(|| Error::parse(open, "missing ']'"))?;
            let vars: Vec<&str> = t[open + 1..close].split(',').map(str::trim).collect();
            if vars.iter().any(|v| v.is_empty() || !v.chars().all(|c| c.is_ascii_alphabetic())) {
                return Err(Error::parse(open + 1, "variables must be alphabetic names"));
            }
            let rest = t[close + 1..].trim();
            if rest.is_empty() {
                if vars.len() != 1 {
                    return Err(Error::parse(open, "only univariate polynomial rings are supported"));
                }
                return match field {
                    "Q" => Ok(RingSpec::PolyQ(UniPoly::new(Rationals, vars[0]))),
                    _ => Ok(RingSpec::PolyFp(UniPoly::new(parse_prime_field(field)?, vars[0]))),
                };
            }
            let rels = rest
                .strip_prefix("/(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::parse(close + 1, "expected '/(<monomials>)'"))?;
            let basis = monomial_basis(&vars, rels, close + 3)?;
            return match field {
                "Q" => Ok(RingSpec::AlgebraQ(FiniteAlgebra::monomial_quotient(Rationals, &vars, &basis)?)),
                _ => Ok(RingSpec::AlgebraFp(FiniteAlgebra::monomial_quotient(
                    parse_prime_field(field)?,
                    &vars,
                    &basis,
                )?)),
            };
        }
        if t.starts_with('F') {
            return Ok(RingSpec::PrimeField(parse_prime_field(t)?));
        }
        Err(Error::parse(0, format!("unrecognized ring '{t}'")))
    }

    pub fn load_algebra(path: &Path) -> Result<RingSpec> {
        let text = std::fs::read_to_string(path)?;
        let file: AlgebraFile = serde_json::from_str(&text)?;
        Self::from_algebra_file(&file, &path.display().to_string())
    }

    pub fn from_algebra_file(file: &AlgebraFile, default_label: &str) -> Result<RingSpec> {
        if file.unit.len() != file.dim {
            return Err(Error::InvalidRing("unit vector length differs from dim".into()));
        }
        let label = file.name.clone().unwrap_or_else(|| format!("algebra:{default_label}"));
        let field = file.field.as_deref().unwrap_or("Q");
        fn convert<F: super::Field>(
            f: F,
            file: &AlgebraFile,
            label: String,
        ) -> Result<FiniteAlgebra<F>> {
            let c = file
                .constants
                .iter()
                .map(|a| a.iter().map(|b| b.iter().map(|&x| f.from_i64(x)).collect()).collect())
                .collect();
            let unit = file.unit.iter().map(|&x| f.from_i64(x)).collect();
            FiniteAlgebra::new(f, label, c, unit, file.names.clone())
        }
        if field == "Q" {
            Ok(RingSpec::AlgebraQ(convert(Rationals, file, label)?))
        } else {
            Ok(RingSpec::AlgebraFp(convert(parse_prime_field(field)?, file, label)?))
        }
    }

    pub fn name(&self) -> String {
        use super::Ring;
        with_ring!(self, r => r.name())
    }

    /// Whether Smith normal form applies (everything except finite algebras).
    pub fn is_elementary_divisor(&self) -> bool {
        !matches!(self, RingSpec::AlgebraFp(_) | RingSpec::AlgebraQ(_))
    }
}

fn parse_prime_field(s: &str) -> Result<PrimeField> {
    let p = s
        .strip_prefix('F')
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| Error::parse(0, format!("expected a prime field like F5, found '{s}'")))?;
    PrimeField::new(p)
}

/// Standard monomials for a monomial ideal given as `x^2,xy,y^2`.
fn monomial_basis(vars: &[&str], rels: &str, offset: usize) -> Result<Vec<Vec<u32>>> {
    let mut gens = Vec::new();
    let mut pos = offset;
    for g in rels.split(',') {
        gens.push(parse_monomial(vars, g.trim(), pos)?);
        pos += g.len() + 1;
    }
    let mut bound = vec![None; vars.len()];
    for g in &gens {
        let support: Vec<usize> = (0..vars.len()).filter(|&i| g[i] > 0).collect();
        if support.len() == 1 {
            let i = support[0];
            bound[i] = Some(bound[i].map_or(g[i], |b: u32| b.min(g[i])));
        }
    }
    let bound: Vec<u32> = bound
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::parse(offset, format!("quotient is infinite: no pure power of {}", vars[i]))))
        .collect::<Result<_>>()?;
    let mut basis = Vec::new();
    let mut e = vec![0u32; vars.len()];
    loop {
        let killed = gens.iter().any(|g| g.iter().zip(&e).all(|(a, b)| a <= b));
        if !killed {
            basis.push(e.clone());
        }
        let mut i = 0;
        while i < e.len() {
            e[i] += 1;
            if e[i] < bound[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
        if i == e.len() {
            break;
        }
    }
    // graded order: 1 first, then by total degree
    basis.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
    Ok(basis)
}

fn parse_monomial(vars: &[&str], s: &str, pos: usize) -> Result<Vec<u32>> {
    let mut e = vec![0u32; vars.len()];
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
    let mut i = 0;
    if chars.is_empty() {
        return Err(Error::parse(pos, "empty monomial"));
    }
    while i < chars.len() {
        let start = i;
        while i < chars.len() && chars[i].is_ascii_alphabetic() {
            i += 1;
            let name: String = chars[start..i].iter().collect();
            if vars.contains(&name.as_str()) {
                break;
            }
        }
        let name: String = chars[start..i].iter().collect();
        let v = vars
            .iter()
            .position(|x| *x == name)
            .ok_or_else(|| Error::parse(pos + start, format!("unknown variable '{name}'")))?;
        let mut k = 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let s2 = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            k = chars[s2..i].iter().collect::<String>().parse().map_err(|_| Error::parse(pos + s2, "bad exponent"))?;
        }
        e[v] += k;
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar() {
        assert_eq!(RingSpec::parse("Z").unwrap().name(), "Z");
        assert_eq!(RingSpec::parse("Z/12").unwrap().name(), "Z/12");
        assert_eq!(RingSpec::parse("F5").unwrap().name(), "F5");
        assert_eq!(RingSpec::parse("Q").unwrap().name(), "Q");
        assert_eq!(RingSpec::parse("F2[t]").unwrap().name(), "F2[t]");
        assert_eq!(RingSpec::parse("F2[x]/(x^3)").unwrap().name(), "F2[x]/(x^3)");
        let a = RingSpec::parse("F2[x,y]/(x^2,xy,y^2)").unwrap();
        assert_eq!(a.name(), "F2[x,y]/(x^2,xy,y^2)");
        assert!(RingSpec::parse("F6").is_err());
        assert!(RingSpec::parse("Z/1").is_err());
        assert!(RingSpec::parse("R").is_err());
        assert!(RingSpec::parse("F2[x,y]/(x^2)").is_err());
    }

    #[test]
    fn monomial_basis_of_two_variable_quotient() {
        let b = monomial_basis(&["x", "y"], "x^2,xy,y^2", 0).unwrap();
        assert_eq!(b, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
    }
}
