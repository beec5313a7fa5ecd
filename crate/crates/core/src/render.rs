//! Text, LaTeX, JSON and decimal renderings of [`ExactValue`], plus parsers
//! for the text and JSON forms.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{ExactValue, IntegralSpec, Rational};
use crate::precision;

pub use precision::MAX_DIGITS;

pub const DEFAULT_DIGITS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Exact,
    Latex,
    Json,
    Decimal,
}

/// A value together with how it should be printed.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderRequest {
    pub value: ExactValue,
    pub format: Format,
    /// Significant digits; used by the decimal and JSON formats.
    pub digits: usize,
}

impl RenderRequest {
    pub fn new(value: ExactValue, format: Format, digits: usize) -> Result<Self> {
        if digits > MAX_DIGITS {
            return Err(Error::DigitsCap { requested: digits, cap: MAX_DIGITS });
        }
        if digits == 0 {
            return Err(Error::Domain("at least one digit is required".into()));
        }
        Ok(Self { value, format, digits })
    }

    /// Renders the value; JSON needs the `(n, q)` it belongs to.
    pub fn render(&self, spec: IntegralSpec) -> Result<String> {
        match self.format {
            Format::Exact => Ok(render_exact(&self.value)),
            Format::Latex => Ok(render_latex(&self.value)),
            Format::Decimal => render_decimal(&self.value, self.digits),
            Format::Json => ValueRecord::new(spec, self.value.clone(), self.digits)?.to_json(),
        }
    }
}

fn terms(value: &ExactValue) -> Vec<(Option<u64>, &Rational)> {
    match value {
        ExactValue::PiMultiple(c) => vec![(None, c)],
        ExactValue::LogCombination(map) => map.iter().map(|(&b, c)| (Some(b), c)).collect(),
    }
}

/// `"3/8 * pi"`, `"3/4 * log(3) - 1/2 * log(5)"`, or `"0"` for an empty log combination.
pub fn render_exact(value: &ExactValue) -> String {
    if let ExactValue::LogCombination(map) = value {
        if map.is_empty() {
            return "0".into();
        }
    }
    let mut out = String::new();
    for (i, (base, c)) in terms(value).into_iter().enumerate() {
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        write!(out, "{}", c.abs()).expect("writing to a String");
        match base {
            None => out.push_str(" * pi"),
            Some(b) => write!(out, " * log({b})").expect("writing to a String"),
        }
    }
    out
}

/// Parses the output of [`render_exact`].
pub fn parse_exact(text: &str) -> Result<ExactValue> {
    let text = text.trim();
    if text == "0" {
        return Ok(ExactValue::LogCombination(Default::default()));
    }
    if let Some(coef) = text.strip_suffix(" * pi") {
        return Ok(ExactValue::PiMultiple(parse_rational(coef)?));
    }

    let mut parsed = Vec::new();
    let (mut negative, mut rest) = match text.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, text),
    };
    loop {
        let next = [" + ", " - "].iter().filter_map(|sep| rest.find(sep).map(|i| (i, *sep))).min();
        let (term, following) = match next {
            Some((i, sep)) => (&rest[..i], Some((sep == " - ", &rest[i + 3..]))),
            None => (rest, None),
        };
        let (coef, base) = parse_log_term(term)?;
        parsed.push((base, if negative { -coef } else { coef }));
        match following {
            Some((neg, tail)) => {
                negative = neg;
                rest = tail;
            }
            None => break,
        }
    }
    ExactValue::log_combination(parsed)
}

fn parse_log_term(term: &str) -> Result<(Rational, u64)> {
    let bad = || Error::Parse(format!("expected `<coef> * log(<base>)`, got `{term}`"));
    let (coef, log) = term.split_once(" * ").ok_or_else(bad)?;
    let base = log.strip_prefix("log(").and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    let base: u64 = base.parse().map_err(|_| bad())?;
    if coef.starts_with('-') {
        return Err(bad());
    }
    Ok((parse_rational(coef)?, base))
}

fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("invalid rational `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

fn latex_coefficient(c: &Rational) -> String {
    let c = c.abs();
    if c.is_integer() {
        if c.is_one() {
            String::new()
        } else {
            c.to_string()
        }
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

/// `\frac{3}{8}\pi`, `\frac{3}{4}\log 3`, with signs kept outside the fractions.
pub fn render_latex(value: &ExactValue) -> String {
    if value.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (base, c)) in terms(value).into_iter().enumerate() {
        match (i, c.is_negative()) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&latex_coefficient(c));
        match base {
            None => out.push_str("\\pi"),
            Some(b) => write!(out, "\\log {b}").expect("writing to a String"),
        }
    }
    out
}

/// Decimal expansion to `digits` significant digits, truncated.
pub fn render_decimal(value: &ExactValue, digits: usize) -> Result<String> {
    precision::decimal_string(value, digits)
}

/// A closed-form value as exchanged in JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueRecord {
    pub spec: IntegralSpec,
    pub value: ExactValue,
    pub decimal: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FractionJson {
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LogJson {
    base: u64,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordJson {
    n: u32,
    q: u32,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pi: Option<FractionJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    logs: Option<Vec<LogJson>>,
    decimal: String,
}

fn fraction_json(c: &Rational) -> FractionJson {
    FractionJson { num: c.numer().to_string(), den: c.denom().to_string() }
}

fn parse_fraction(num: &str, den: &str) -> Result<Rational> {
    let num: BigInt = num.parse().map_err(|_| Error::Parse(format!("bad numerator `{num}`")))?;
    let den: BigInt = den.parse().map_err(|_| Error::Parse(format!("bad denominator `{den}`")))?;
    if !den.is_positive() {
        return Err(Error::Parse(format!("denominator must be positive, got {den}")));
    }
    Ok(Rational::new(num, den))
}

impl ValueRecord {
    pub fn new(spec: IntegralSpec, value: ExactValue, digits: usize) -> Result<Self> {
        let decimal = render_decimal(&value, digits)?;
        Ok(Self { spec, value, decimal })
    }

    /// Single-line JSON; big integers are written as decimal strings.
    pub fn to_json(&self) -> Result<String> {
        let (kind, pi, logs) = match &self.value {
            ExactValue::PiMultiple(c) => ("pi", Some(fraction_json(c)), None),
            ExactValue::LogCombination(map) => {
                let logs = map
                    .iter()
                    .map(|(&base, c)| LogJson { base, num: c.numer().to_string(), den: c.denom().to_string() })
                    .collect();
                ("log", None, Some(logs))
            }
        };
        let json = RecordJson {
            n: self.spec.n(),
            q: self.spec.q(),
            kind: kind.into(),
            pi,
            logs,
            decimal: self.decimal.clone(),
        };
        serde_json::to_string(&json).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json: RecordJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let spec = IntegralSpec::new(json.n.into(), json.q.into())?;
        let value = match (json.kind.as_str(), json.pi, json.logs) {
            ("pi", Some(f), None) => ExactValue::PiMultiple(parse_fraction(&f.num, &f.den)?),
            ("log", None, Some(logs)) => ExactValue::log_combination(
                logs.iter()
                    .map(|l| Ok((l.base, parse_fraction(&l.num, &l.den)?)))
                    .collect::<Result<Vec<_>>>()?,
            )?,
            (kind, _, _) => {
                return Err(Error::Parse(format!("kind `{kind}` does not match the fields present")))
            }
        };
        Ok(Self { spec, value, decimal: json.decimal })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::closed_form;
    use std::collections::BTreeMap;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn cf(n: i64, q: i64) -> ExactValue {
        closed_form(IntegralSpec::new(n, q).unwrap()).unwrap()
    }

    #[test]
    fn exact_form_examples() {
        assert_eq!(render_exact(&cf(3, 3)), "3/8 * pi");
        assert_eq!(render_exact(&cf(4, 3)), "1 * log(2)");
        assert_eq!(render_exact(&cf(3, 2)), "3/4 * log(3)");
        assert_eq!(render_exact(&ExactValue::LogCombination(BTreeMap::new())), "0");
        let mixed = ExactValue::LogCombination(BTreeMap::from([(3, r(-3, 4)), (5, r(-1, 2)), (7, r(2, 1))]));
        assert_eq!(render_exact(&mixed), "-3/4 * log(3) - 1/2 * log(5) + 2 * log(7)");
        assert_eq!(parse_exact("-3/4 * log(3) - 1/2 * log(5) + 2 * log(7)").unwrap(), mixed);
    }

    #[test]
    fn latex_examples() {
        assert_eq!(render_latex(&cf(3, 3)), "\\frac{3}{8}\\pi");
        assert_eq!(render_latex(&cf(3, 2)), "\\frac{3}{4}\\log 3");
        assert_eq!(render_latex(&cf(4, 3)), "\\log 2");
        assert_eq!(render_latex(&ExactValue::PiMultiple(r(-3, 8))), "-\\frac{3}{8}\\pi");
        let mixed = ExactValue::LogCombination(BTreeMap::from([(3, r(2, 1)), (5, r(-1, 6))]));
        assert_eq!(render_latex(&mixed), "2\\log 3 - \\frac{1}{6}\\log 5");
        assert_eq!(render_latex(&ExactValue::PiMultiple(r(0, 1))), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "pi", "3/0 * pi", "1 * log(x)", "1 * log(3) + ", "1 * exp(3)", "1 * log(3) + -2 * log(5)"] {
            assert!(parse_exact(bad).is_err(), "{bad:?}");
        }
        assert!(parse_exact("1 * log(0)").is_err());
    }

    #[test]
    fn json_shape() {
        let record = ValueRecord::new(IntegralSpec::new(3, 3).unwrap(), cf(3, 3), 10).unwrap();
        assert_eq!(
            record.to_json().unwrap(),
            r#"{"n":3,"q":3,"kind":"pi","pi":{"num":"3","den":"8"},"decimal":"1.178097245"}"#
        );
        let record = ValueRecord::new(IntegralSpec::new(3, 2).unwrap(), cf(3, 2), 5).unwrap();
        assert_eq!(
            record.to_json().unwrap(),
            r#"{"n":3,"q":2,"kind":"log","logs":[{"base":3,"num":"3","den":"4"}],"decimal":"0.82395"}"#
        );
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        for spec in IntegralSpec::all_convergent(25) {
            let record = ValueRecord::new(spec, closed_form(spec).unwrap(), 30).unwrap();
            let text = record.to_json().unwrap();
            let back = ValueRecord::from_json(&text).unwrap();
            assert_eq!(back, record);
            assert_eq!(back.to_json().unwrap(), text);
        }
    }

    #[test]
    fn json_rejects_inconsistent_records() {
        let bad = [
            r#"{"n":3,"q":3,"kind":"log","pi":{"num":"3","den":"8"},"decimal":"1"}"#,
            r#"{"n":3,"q":3,"kind":"pi","pi":{"num":"3","den":"0"},"decimal":"1"}"#,
            r#"{"n":2,"q":3,"kind":"pi","pi":{"num":"3","den":"8"},"decimal":"1"}"#,
            r#"{"n":3,"q":3,"kind":"pi","pi":{"num":"3","den":"8"},"decimal":"1","extra":1}"#,
        ];
        for text in bad {
            assert!(ValueRecord::from_json(text).is_err(), "{text}");
        }
    }

    #[test]
    fn render_request_caps_digits() {
        assert!(matches!(
            RenderRequest::new(cf(1, 1), Format::Decimal, MAX_DIGITS + 1),
            Err(Error::DigitsCap { .. })
        ));
        let req = RenderRequest::new(cf(1, 1), Format::Decimal, 20).unwrap();
        assert_eq!(req.render(IntegralSpec::new(1, 1).unwrap()).unwrap(), "1.5707963267948966192");
    }
}
