//! JSON shapes for configurations, polytopes and series. Rationals travel as
//! `"p/q"` strings (plain `"p"` for integers).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factorial::RatioSpec;
use crate::geometry::{lift_config, Facet, HPolytope, LatticeConfig};
use crate::logseries::{LogPolynomial, LogSeries};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::series::{FormalSeries, Window};

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
}

fn rationals_to_strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn strings_to_rationals(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigJson {
    pub m: usize,
    pub points: Vec<Vec<i64>>,
}

impl ConfigJson {
    pub fn to_config(&self) -> Result<LatticeConfig> {
        if let Some((i, p)) = self.points.iter().enumerate().find(|(_, p)| p.len() != self.m) {
            return Err(Error::Parse(format!(
                "points[{i}] has {} coordinates, expected m = {}",
                p.len(),
                self.m
            )));
        }
        lift_config(&self.points)
    }
}

impl From<&LatticeConfig> for ConfigJson {
    fn from(c: &LatticeConfig) -> Self {
        Self {
            m: c.m,
            points: c.points.clone(),
        }
    }
}

pub fn parse_config(text: &str) -> Result<LatticeConfig> {
    let raw: ConfigJson = serde_json::from_str(text).map_err(parse_error)?;
    raw.to_config()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetJson {
    pub normal: Vec<i64>,
    pub offset: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub facets: Vec<FacetJson>,
    pub vertices: Vec<Vec<String>>,
}

impl From<&HPolytope> for PolytopeJson {
    fn from(p: &HPolytope) -> Self {
        Self {
            facets: p
                .facets
                .iter()
                .map(|f| FacetJson {
                    normal: f.normal.clone(),
                    offset: f.offset,
                })
                .collect(),
            vertices: p.vertices.iter().map(|v| rationals_to_strings(v)).collect(),
        }
    }
}

impl PolytopeJson {
    pub fn to_polytope(&self) -> Result<HPolytope> {
        let dim = self.facets.first().map_or(0, |f| f.normal.len());
        Ok(HPolytope {
            dim,
            facets: self
                .facets
                .iter()
                .map(|f| Facet {
                    normal: f.normal.clone(),
                    offset: f.offset,
                })
                .collect(),
            vertices: self.vertices.iter().map(|v| strings_to_rationals(v)).collect::<Result<_>>()?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub k: Vec<i64>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub base: Vec<String>,
    pub window: Window,
    pub terms: Vec<TermJson>,
}

impl From<&FormalSeries> for SeriesJson {
    fn from(s: &FormalSeries) -> Self {
        Self {
            base: rationals_to_strings(&s.base),
            window: s.window.clone(),
            terms: s
                .terms
                .iter()
                .map(|(k, c)| TermJson {
                    k: k.clone(),
                    coeff: format_rational(c),
                })
                .collect(),
        }
    }
}

impl SeriesJson {
    pub fn to_series(&self) -> Result<FormalSeries> {
        let mut s = FormalSeries::new(strings_to_rationals(&self.base)?, self.window.clone());
        for t in &self.terms {
            s.insert(t.k.clone(), parse_rational(&t.coeff)?);
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogMonomialJson {
    pub log_exps: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogTermJson {
    pub k: Vec<i64>,
    pub coeff: Vec<LogMonomialJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogSeriesJson {
    pub base: Vec<String>,
    pub window: Window,
    pub terms: Vec<LogTermJson>,
}

impl From<&LogSeries> for LogSeriesJson {
    fn from(s: &LogSeries) -> Self {
        Self {
            base: rationals_to_strings(&s.base),
            window: s.window.clone(),
            terms: s
                .terms
                .iter()
                .map(|(k, c)| LogTermJson {
                    k: k.clone(),
                    coeff: c
                        .terms
                        .iter()
                        .map(|(e, r)| LogMonomialJson {
                            log_exps: e.clone(),
                            coeff: format_rational(r),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl LogSeriesJson {
    pub fn to_series(&self) -> Result<LogSeries> {
        let mut s = LogSeries::new(strings_to_rationals(&self.base)?, self.window.clone());
        for t in &self.terms {
            let mut c = LogPolynomial::default();
            for mono in &t.coeff {
                c.add_term(mono.log_exps.clone(), parse_rational(&mono.coeff)?);
            }
            s.insert(t.k.clone(), c);
        }
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatioSpecJson {
    pub alpha: Vec<u64>,
    pub beta: Vec<u64>,
}

pub fn parse_ratio_spec(text: &str) -> Result<RatioSpec> {
    let raw: RatioSpecJson = serde_json::from_str(text).map_err(parse_error)?;
    RatioSpec::new(raw.alpha, raw.beta)
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::convex_hull_hrep;
    use crate::rational::{int, rat};

    #[test]
    fn config_roundtrip() {
        let cfg = parse_config(r#"{"m": 2, "points": [[0,0],[1,0],[0,1]]}"#).unwrap();
        assert_eq!(cfg.lifted[1], vec![1, 0, 1]);
        assert_eq!(ConfigJson::from(&cfg).points, cfg.points);
        let e = parse_config(r#"{"m": 2, "points": [[0,0],[1,0],[0]]}"#).unwrap_err();
        assert!(e.to_string().contains("points[2]"));
        let e = parse_config("{\"m\": 2,\n \"points\": [[0,0],}").unwrap_err();
        assert!(e.to_string().contains("line 2"));
        assert!(parse_config(r#"{"m": 2, "points": [[0,0]], "x": 1}"#).is_err());
    }

    #[test]
    fn polytope_roundtrip() {
        let p = convex_hull_hrep(&[vec![0, 0], vec![2, 0], vec![0, 3]]).unwrap();
        let j = PolytopeJson::from(&p);
        let text = to_pretty(&j);
        let back: PolytopeJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_polytope().unwrap(), p);
    }

    #[test]
    fn series_roundtrip() {
        let w = Window::new(vec![-2, -2], vec![2, 2]);
        let mut s = FormalSeries::new(vec![rat(-1, 3), int(0)], w);
        s.insert(vec![1, -1], rat(5, 7));
        s.insert(vec![0, 0], int(-2));
        let j = SeriesJson::from(&s);
        assert_eq!(j.base, vec!["-1/3", "0"]);
        assert_eq!(j.terms[1].coeff, "5/7");
        assert_eq!(j.to_series().unwrap(), s);
    }

    #[test]
    fn log_series_roundtrip() {
        let w = Window::new(vec![0], vec![3]);
        let mut s = LogSeries::new(vec![int(0)], w);
        s.insert(vec![2], LogPolynomial::monomial(1, 0, 2, rat(1, 2)));
        let j = LogSeriesJson::from(&s);
        assert_eq!(j.terms[0].coeff[0].log_exps, vec![2]);
        assert_eq!(j.to_series().unwrap(), s);
    }

    #[test]
    fn ratio_spec_parsing() {
        let s = parse_ratio_spec(r#"{"alpha": [2], "beta": [1, 1]}"#).unwrap();
        assert_eq!(s.beta, vec![1, 1]);
        assert!(parse_ratio_spec(r#"{"alpha": [2], "beta": [1]}"#).is_err());
    }
}
