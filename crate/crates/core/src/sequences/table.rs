use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::bell;
use super::stirling::{self, Triangle};
use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, Lambda};
use crate::{Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    S1,
    S2,
    #[serde(rename = "S1deg")]
    S1Deg,
    #[serde(rename = "S2deg")]
    S2Deg,
    #[serde(rename = "S2degPoly")]
    S2DegPoly,
    BernoulliDeg,
    BellDeg,
    TruncBellDeg,
    TruncModBellDeg,
    BellClassical,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::S1,
        Family::S2,
        Family::S1Deg,
        Family::S2Deg,
        Family::S2DegPoly,
        Family::BernoulliDeg,
        Family::BellDeg,
        Family::TruncBellDeg,
        Family::TruncModBellDeg,
        Family::BellClassical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::S1 => "S1",
            Family::S2 => "S2",
            Family::S1Deg => "S1deg",
            Family::S2Deg => "S2deg",
            Family::S2DegPoly => "S2degPoly",
            Family::BernoulliDeg => "BernoulliDeg",
            Family::BellDeg => "BellDeg",
            Family::TruncBellDeg => "TruncBellDeg",
            Family::TruncModBellDeg => "TruncModBellDeg",
            Family::BellClassical => "BellClassical",
        }
    }

    /// Indexed by `(n, k)` with `k <= n`; otherwise indexed by `n` alone.
    pub fn is_triangular(self) -> bool {
        matches!(
            self,
            Family::S1 | Family::S2 | Family::S1Deg | Family::S2Deg | Family::S2DegPoly
        )
    }

    /// Entries are polynomials in `x` rather than rationals.
    pub fn is_polynomial(self) -> bool {
        matches!(
            self,
            Family::S2DegPoly
                | Family::BernoulliDeg
                | Family::BellDeg
                | Family::TruncBellDeg
                | Family::TruncModBellDeg
        )
    }

    pub fn uses_lambda(self) -> bool {
        !matches!(self, Family::S1 | Family::S2 | Family::BellClassical)
    }

    pub fn uses_p(self) -> bool {
        matches!(self, Family::TruncBellDeg | Family::TruncModBellDeg)
    }

    pub fn uses_r(self) -> bool {
        self == Family::BernoulliDeg
    }

    pub fn primary_construction(self) -> Construction {
        match self {
            Family::S1 => Construction::PolyExpansion,
            Family::S2 => Construction::Recurrence,
            Family::S1Deg | Family::S2Deg => Construction::TriangularSolve,
            Family::S2DegPoly => Construction::FiniteSum,
            Family::BernoulliDeg => Construction::EgfExtraction,
            Family::BellDeg | Family::BellClassical => Construction::RowSum,
            Family::TruncBellDeg | Family::TruncModBellDeg => Construction::ClosedForm,
        }
    }

    pub(crate) fn zero_value(self) -> Value {
        if self.is_polynomial() {
            Value::Poly(Poly::zero())
        } else {
            Value::Rational(Rational::zero())
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::param(format!("unknown family {s:?}")))
    }
}

/// How a table was produced. Checks compare tables with different tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Construction {
    /// Classical three-term recurrence.
    Recurrence,
    /// Monomial coefficients of an expanded product.
    PolyExpansion,
    /// Exact change of basis against a monic triangular basis.
    TriangularSolve,
    /// Exponential-normalized coefficients of a generating function.
    EgfExtraction,
    /// Finite convolution sum over lower tables.
    FiniteSum,
    /// Row sums of a Stirling triangle.
    RowSum,
    /// Closed weighted sum over a Stirling triangle.
    ClosedForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TableParams {
    pub lambda: Lambda,
    pub p: usize,
    pub r: usize,
}

impl Default for TableParams {
    fn default() -> Self {
        TableParams {
            lambda: Lambda::classical(),
            p: 0,
            r: 0,
        }
    }
}

impl TableParams {
    pub fn with_lambda(lambda: &Lambda) -> Self {
        TableParams {
            lambda: lambda.clone(),
            ..Self::default()
        }
    }

    pub fn with_lambda_p(lambda: &Lambda, p: usize) -> Self {
        TableParams {
            lambda: lambda.clone(),
            p,
            r: 0,
        }
    }

    /// Zeroes the parameters the family does not depend on, so equivalent
    /// requests share one memo entry.
    fn normalized_for(&self, family: Family) -> Self {
        TableParams {
            lambda: if family.uses_lambda() {
                self.lambda.clone()
            } else {
                Lambda::classical()
            },
            p: if family.uses_p() { self.p } else { 0 },
            r: if family.uses_r() { self.r } else { 0 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Rational(Rational),
    Poly(Poly),
}

impl Value {
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Value::Rational(r) => Some(r),
            Value::Poly(_) => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            Value::Poly(p) => Some(p),
            Value::Rational(_) => None,
        }
    }

    fn to_json(&self) -> serde_json::Value {
        match self {
            Value::Rational(r) => json!(format_rational(r)),
            Value::Poly(p) => json!(p.coeffs().iter().map(format_rational).collect::<Vec<_>>()),
        }
    }

    fn from_json(v: &serde_json::Value, polynomial: bool) -> Result<Self> {
        let bad = || Error::param(format!("malformed table entry {v}"));
        if polynomial {
            let coeffs = v
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|c| parse_rational(c.as_str().ok_or_else(bad)?))
                .collect::<Result<Vec<_>>>()?;
            Ok(Value::Poly(Poly::from_coeffs(coeffs)))
        } else {
            Ok(Value::Rational(parse_rational(v.as_str().ok_or_else(bad)?)?))
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(r) => f.write_str(&format_rational(r)),
            Value::Poly(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceTable {
    family: Family,
    params: TableParams,
    n_max: usize,
    construction: Construction,
    rows: Vec<Vec<Value>>,
}

fn rational_rows(rows: Triangle<Rational>) -> Vec<Vec<Value>> {
    rows.into_iter()
        .map(|row| row.into_iter().map(Value::Rational).collect())
        .collect()
}

fn poly_rows(rows: Triangle<Poly>) -> Vec<Vec<Value>> {
    rows.into_iter()
        .map(|row| row.into_iter().map(Value::Poly).collect())
        .collect()
}

fn linear_polys(values: Vec<Poly>) -> Vec<Vec<Value>> {
    values.into_iter().map(|p| vec![Value::Poly(p)]).collect()
}

impl SequenceTable {
    /// Computes a table without touching the memo store.
    pub fn build(
        family: Family,
        params: &TableParams,
        n_max: usize,
        construction: Construction,
    ) -> Result<Self> {
        use Construction::*;
        let params = params.normalized_for(family);
        let lambda = &params.lambda;
        let rows = match (family, construction) {
            (Family::S2, Recurrence) => rational_rows(stirling::stirling2_by_recurrence(n_max)),
            (Family::S2, TriangularSolve) => {
                rational_rows(stirling::stirling2_deg_by_solve(&Lambda::classical(), n_max))
            }
            (Family::S2, EgfExtraction) => {
                rational_rows(stirling::stirling2_deg_by_egf(&Lambda::classical(), n_max))
            }
            (Family::S1, PolyExpansion) => rational_rows(stirling::stirling1_by_expansion(n_max)),
            (Family::S1, TriangularSolve) => {
                rational_rows(stirling::stirling1_deg_by_solve(&Lambda::classical(), n_max))
            }
            (Family::S1, EgfExtraction) => {
                rational_rows(stirling::stirling1_deg_by_egf(&Lambda::classical(), n_max))
            }
            (Family::S2Deg, TriangularSolve) => {
                rational_rows(stirling::stirling2_deg_by_solve(lambda, n_max))
            }
            (Family::S2Deg, EgfExtraction) => {
                rational_rows(stirling::stirling2_deg_by_egf(lambda, n_max))
            }
            (Family::S1Deg, TriangularSolve) => {
                rational_rows(stirling::stirling1_deg_by_solve(lambda, n_max))
            }
            (Family::S1Deg, EgfExtraction) => {
                rational_rows(stirling::stirling1_deg_by_egf(lambda, n_max))
            }
            (Family::S2DegPoly, FiniteSum) => {
                poly_rows(stirling::stirling2_deg_poly_by_sum(lambda, n_max))
            }
            (Family::S2DegPoly, EgfExtraction) => {
                poly_rows(stirling::stirling2_deg_poly_by_egf(lambda, n_max))
            }
            (Family::BernoulliDeg, EgfExtraction) => {
                linear_polys(bell::deg_bernoulli_by_egf(lambda, params.r, n_max))
            }
            (Family::BellClassical, RowSum) => stirling::stirling2_by_recurrence(n_max)
                .into_iter()
                .map(|row| vec![Value::Rational(row.into_iter().sum())])
                .collect(),
            (Family::BellClassical, EgfExtraction) => bell::bell_deg_by_egf(&Lambda::classical(), n_max)
                .into_iter()
                .map(|p| vec![Value::Rational(p.eval(&Rational::one()))])
                .collect(),
            (Family::BellDeg, RowSum) => linear_polys(bell::bell_deg_by_row_sum(lambda, n_max)),
            (Family::BellDeg, EgfExtraction) => linear_polys(bell::bell_deg_by_egf(lambda, n_max)),
            (Family::TruncBellDeg, ClosedForm) => {
                linear_polys(bell::trunc_bell_deg_closed(lambda, params.p, n_max))
            }
            (Family::TruncBellDeg, EgfExtraction) => {
                linear_polys(bell::trunc_bell_deg_by_egf(lambda, params.p, n_max))
            }
            (Family::TruncModBellDeg, ClosedForm) => {
                linear_polys(bell::trunc_mod_bell_deg_closed(lambda, params.p, n_max))
            }
            (Family::TruncModBellDeg, EgfExtraction) => {
                linear_polys(bell::trunc_mod_bell_deg_by_egf(lambda, params.p, n_max)?)
            }
            (family, construction) => {
                return Err(Error::param(format!(
                    "{family} has no {construction:?} construction"
                )))
            }
        };
        Ok(SequenceTable {
            family,
            params,
            n_max,
            construction,
            rows,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &TableParams {
        &self.params
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn construction(&self) -> Construction {
        self.construction
    }

    pub fn rows(&self) -> &[Vec<Value>] {
        &self.rows
    }

    /// Entry `(n, k)`; linear families ignore `k`. Vanishes for `k > n`.
    pub fn get(&self, n: usize, k: usize) -> Value {
        let k = if self.family.is_triangular() { k } else { 0 };
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_else(|| self.family.zero_value())
    }

    /// Rational entry; panics for polynomial families.
    pub fn rational(&self, n: usize, k: usize) -> Rational {
        match self.get(n, k) {
            Value::Rational(r) => r,
            Value::Poly(_) => panic!("{} stores polynomials", self.family),
        }
    }

    /// Polynomial entry; panics for rational families.
    pub fn poly(&self, n: usize, k: usize) -> Poly {
        match self.get(n, k) {
            Value::Poly(p) => p,
            Value::Rational(_) => panic!("{} stores rationals", self.family),
        }
    }

    /// CSV with one row per `n`. Triangular tables get one column per `k`
    /// (blank past the diagonal); linear tables a single `value` column.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.family.is_triangular() {
            let mut header = vec!["n".to_string()];
            header.extend((0..=self.n_max).map(|k| k.to_string()));
            w.write_record(&header)?;
            for (n, row) in self.rows.iter().enumerate() {
                let mut record = vec![n.to_string()];
                record.extend((0..=self.n_max).map(|k| {
                    row.get(k).map(ToString::to_string).unwrap_or_default()
                }));
                w.write_record(&record)?;
            }
        } else {
            w.write_record(["n", "value"])?;
            for (n, row) in self.rows.iter().enumerate() {
                w.write_record([n.to_string(), row[0].to_string()])?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let values: Vec<serde_json::Value> = if self.family.is_triangular() {
            self.rows
                .iter()
                .map(|row| serde_json::Value::Array(row.iter().map(Value::to_json).collect()))
                .collect()
        } else {
            self.rows.iter().map(|row| row[0].to_json()).collect()
        };
        json!({
            "family": self.family,
            "lambda": self.params.lambda,
            "p": self.params.p,
            "r": self.params.r,
            "n_max": self.n_max,
            "construction": self.construction,
            "values": values,
        })
    }

    /// Pretty JSON with keys in sorted order.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("table json is serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: serde_json::Value = serde_json::from_str(text)?;
        let field = |name: &str| {
            doc.get(name)
                .ok_or_else(|| Error::param(format!("table json lacks {name:?}")))
        };
        let family: Family = serde_json::from_value(field("family")?.clone())?;
        let construction: Construction = serde_json::from_value(field("construction")?.clone())?;
        let lambda: Lambda = serde_json::from_value(field("lambda")?.clone())?;
        let p: usize = serde_json::from_value(field("p")?.clone())?;
        let r: usize = serde_json::from_value(field("r")?.clone())?;
        let n_max: usize = serde_json::from_value(field("n_max")?.clone())?;
        let raw = field("values")?
            .as_array()
            .ok_or_else(|| Error::param("table values must be an array"))?;
        let polynomial = family.is_polynomial();
        let rows = raw
            .iter()
            .map(|row| {
                if family.is_triangular() {
                    row.as_array()
                        .ok_or_else(|| Error::param("triangular rows must be arrays"))?
                        .iter()
                        .map(|v| Value::from_json(v, polynomial))
                        .collect::<Result<Vec<_>>>()
                } else {
                    Ok(vec![Value::from_json(row, polynomial)?])
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SequenceTable {
            family,
            params: TableParams { lambda, p, r },
            n_max,
            construction,
            rows,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct TableKey {
    family: Family,
    params: TableParams,
    n_max: usize,
    construction: Construction,
}

type Memo = RwLock<HashMap<TableKey, Arc<SequenceTable>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(super) fn cached(
    family: Family,
    params: &TableParams,
    n_max: usize,
    construction: Construction,
) -> Result<Arc<SequenceTable>> {
    let key = TableKey {
        family,
        params: params.normalized_for(family),
        n_max,
        construction,
    };
    if let Some(hit) = memo().read().expect("memo lock").get(&key) {
        return Ok(Arc::clone(hit));
    }
    let built = Arc::new(SequenceTable::build(family, &key.params, n_max, construction)?);
    let mut store = memo().write().expect("memo lock");
    Ok(Arc::clone(store.entry(key).or_insert(built)))
}
