use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A float paired with an absolute-error radius.
///
/// The contract is an enclosure: the exact quantity lies in
/// `[value - abs_error, value + abs_error]`. Errors propagate additively
/// through sums, which is exact for interval radii and keeps the bookkeeping
/// auditable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueWithError {
    pub value: f64,
    pub abs_error: f64,
}

// On the wire both fields are decimal strings (shortest round-trip form),
// like every other numeric leaf in the JSON output.
impl Serialize for ValueWithError {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut out = s.serialize_struct("ValueWithError", 2)?;
        out.serialize_field("value", &format!("{}", self.value))?;
        out.serialize_field("abs_error", &format!("{}", self.abs_error))?;
        out.end()
    }
}

impl<'de> Deserialize<'de> for ValueWithError {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(with = "crate::wire::f64_string")]
            value: f64,
            #[serde(with = "crate::wire::f64_string")]
            abs_error: f64,
        }
        let raw = Raw::deserialize(d)?;
        if !raw.abs_error.is_finite() || raw.abs_error < 0.0 {
            return Err(D::Error::custom("abs_error must be finite and non-negative"));
        }
        Ok(ValueWithError::new(raw.value, raw.abs_error))
    }
}

impl ValueWithError {
    pub fn new(value: f64, abs_error: f64) -> Self {
        debug_assert!(abs_error >= 0.0, "error radius must be non-negative");
        Self { value, abs_error }
    }

    /// A value known exactly up to one rounding of the f64 itself.
    pub fn exact(value: f64) -> Self {
        Self { value, abs_error: 0.0 }
    }

    /// A float obtained from exact data through `terms` elementary log/exp
    /// evaluations, each budgeted at 1e-14 of absolute error.
    pub fn from_log_terms(value: f64, terms: usize) -> Self {
        Self { value, abs_error: 1e-14 * terms as f64 }
    }

    pub fn add(self, other: Self) -> Self {
        Self { value: self.value + other.value, abs_error: self.abs_error + other.abs_error }
    }

    /// Largest value consistent with the enclosure.
    pub fn upper(self) -> f64 {
        self.value + self.abs_error
    }

    /// Smallest value consistent with the enclosure.
    pub fn lower(self) -> f64 {
        self.value - self.abs_error
    }
}

impl std::ops::Add for ValueWithError {
    type Output = ValueWithError;
    fn add(self, rhs: Self) -> Self {
        ValueWithError::add(self, rhs)
    }
}

impl std::fmt::Display for ValueWithError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} ± {:.3e}", self.value, self.abs_error)
    }
}

/// A non-negative height value (Weil heights are sums of log-plus terms).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeightValue {
    value: f64,
}

impl HeightValue {
    pub fn new(value: f64) -> crate::Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(crate::Error::Internal(format!(
                "height must be finite and non-negative, got {value}"
            )));
        }
        Ok(Self { value })
    }

    pub fn value(self) -> f64 {
        self.value
    }
}

impl From<HeightValue> for f64 {
    fn from(h: HeightValue) -> f64 {
        h.value
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_propagation() {
        let a = ValueWithError::new(1.0, 1e-3);
        let b = ValueWithError::new(2.0, 2e-3);
        let c = a + b;
        assert_eq!(c.value, 3.0);
        assert!((c.abs_error - 3e-3).abs() < 1e-18);
        assert_eq!(c.upper(), 3.0 + 3e-3);
        assert_eq!(c.lower(), 3.0 - 3e-3);
    }

    #[test]
    fn height_rejects_negative() {
        assert!(HeightValue::new(-0.1).is_err());
        assert!(HeightValue::new(f64::NAN).is_err());
        assert_eq!(HeightValue::new(0.5).unwrap().value(), 0.5);
    }

    #[test]
    fn serde_uses_strings_and_round_trips() {
        let v = ValueWithError::new(0.1 + 0.2, 1.25e-13);
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(
            text,
            r#"{"value":"0.30000000000000004","abs_error":"0.000000000000125"}"#
        );
        let back: ValueWithError = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<ValueWithError>(r#"{"value":"1","abs_error":"-2"}"#).is_err());
    }
}
