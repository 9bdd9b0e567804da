//! Serializable per-triple reports. Integers that can outgrow 64 bits are
//! written as decimal strings, rationals as `"p/q"`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::motive::TripleAnalysis;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleReport {
    pub n: u32,
    pub d: u32,
    pub kappa: u32,
    pub rank_qe: u64,
    pub dim_gr: u32,
    pub s_excess: i64,
    pub codim_shift: i64,
    #[serde(with = "opt_bigint")]
    pub m: Option<BigInt>,
    pub condition_b: bool,
    #[serde(with = "opt_bigint")]
    pub osculating_count: Option<BigInt>,
    #[serde(with = "opt_rationals")]
    pub betas: Option<Vec<BigRational>>,
    pub elv_sufficient: bool,
    pub intro_bound: bool,
    pub expected_fano_dim: i64,
    pub hf_dim: i64,
}

impl From<&TripleAnalysis> for TripleReport {
    fn from(a: &TripleAnalysis) -> Self {
        let p = a.params();
        let c = &a.condition;
        TripleReport {
            n: p.n,
            d: p.d,
            kappa: p.kappa,
            rank_qe: p.rank_qe,
            dim_gr: p.dim_gr,
            s_excess: p.s_excess,
            codim_shift: p.codim_shift,
            m: c.m.clone(),
            condition_b: c.holds,
            osculating_count: c.osculating_count.clone(),
            betas: a.betas.clone(),
            elv_sufficient: c.elv_sufficient,
            intro_bound: c.intro_bound,
            expected_fano_dim: p.expected_fano_dim,
            hf_dim: p.hf_dim,
        }
    }
}

impl TripleReport {
    pub const CSV_HEADER: &'static str =
        "n,d,kappa,rank_qe,dim_gr,s_excess,m,condition_b,osculating_count,elv_sufficient,intro_bound";

    /// Sort key `(kappa, d, n)`.
    pub fn key(&self) -> (u32, u32, u32) {
        (self.kappa, self.d, self.n)
    }

    /// One CSV row matching [`Self::CSV_HEADER`]; undefined values are empty.
    pub fn csv_row(&self) -> String {
        let opt = |x: &Option<BigInt>| x.as_ref().map_or(String::new(), BigInt::to_string);
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.d,
            self.kappa,
            self.rank_qe,
            self.dim_gr,
            self.s_excess,
            opt(&self.m),
            self.condition_b,
            opt(&self.osculating_count),
            self.elv_sufficient,
            self.intro_bound
        )
    }
}

/// Header plus one row per report.
pub fn to_csv(reports: &[TripleReport]) -> String {
    let mut out = String::from(TripleReport::CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: BigInt = p.trim().parse().ok()?;
    let q: BigInt = q.trim().parse().ok()?;
    if q == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(p, q))
}

impl fmt::Display for TripleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |x: &Option<BigInt>| x.as_ref().map_or("undefined".to_string(), BigInt::to_string);
        writeln!(f, "(n,d,kappa) = ({},{},{})", self.n, self.d, self.kappa)?;
        writeln!(f, "rank QE           {}", self.rank_qe)?;
        writeln!(f, "dim Gr            {}", self.dim_gr)?;
        writeln!(f, "excess s          {}", self.s_excess)?;
        writeln!(f, "codim shift e     {}", self.codim_shift)?;
        writeln!(f, "m                 {}", opt(&self.m))?;
        writeln!(f, "condition (B)     {}", self.condition_b)?;
        writeln!(f, "osculating count  {}", opt(&self.osculating_count))?;
        let betas = match &self.betas {
            Some(b) => b.iter().map(format_rational).collect::<Vec<_>>().join(", "),
            None => "undefined".into(),
        };
        writeln!(f, "betas             {betas}")?;
        writeln!(f, "ELV sufficient    {}", self.elv_sufficient)?;
        writeln!(f, "intro bound       {}", self.intro_bound)?;
        writeln!(f, "expected dim F    {}", self.expected_fano_dim)?;
        write!(f, "dim HF            {}", self.hf_dim)
    }
}

mod opt_bigint {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(|_| D::Error::custom(format!("invalid integer `{s}`"))))
            .transpose()
    }
}

mod opt_rationals {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Vec<BigRational>>, s: S) -> Result<S::Ok, S::Error> {
        x.as_ref()
            .map(|v| v.iter().map(super::format_rational).collect::<Vec<_>>())
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigRational>>, D::Error> {
        let Some(v) = Option::<Vec<String>>::deserialize(d)? else {
            return Ok(None);
        };
        v.iter()
            .map(|s| super::parse_rational(s).ok_or_else(|| D::Error::custom(format!("invalid rational `{s}`"))))
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }
}
