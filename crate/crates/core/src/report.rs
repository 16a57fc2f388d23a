//! Report envelope `{manifest, results, ledger}` and deterministic JSON output.
//!
//! Floats are written with 17 significant digits, so identical inputs give
//! byte-identical files and every double round-trips.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

/// `%.17g`: fixed notation for decimal exponents in `[-5, 17)`, scientific otherwise.
pub fn g17(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: String| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    };
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim(format!("{x:.decimals$}"))
    } else {
        format!(
            "{}e{}{:02}",
            trim(mant.to_string()),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

/// Pretty JSON formatter that writes floats through [`g17`].
pub struct G17Formatter<'a> {
    inner: PrettyFormatter<'a>,
}

impl Default for G17Formatter<'_> {
    fn default() -> Self {
        G17Formatter {
            inner: PrettyFormatter::with_indent(b"  "),
        }
    }
}

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
            self.inner.$name(w $(, $arg)*)
        })*
    };
}

impl Formatter for G17Formatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(g17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        w.write_all(g17(f64::from(value)).as_bytes())
    }

    delegate! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        begin_object_value();
        end_object_value();
    }
}

/// Deterministic pretty JSON with 17-significant-digit floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, G17Formatter::default());
    value.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

/// Provenance of a run. Two runs with equal manifests produce equal reports.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: serde_json::Value,
    pub seed: u64,
    pub tolerances: serde_json::Value,
    pub tool_version: String,
    /// Omitted when byte-reproducible output is requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl RunManifest {
    pub fn new(
        command: &str,
        parameters: serde_json::Value,
        seed: u64,
        tolerances: serde_json::Value,
    ) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters,
            seed,
            tolerances,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_ms: None,
        }
    }
}

/// One named inequality or check. `slack = (rhs - lhs) / max(1, |rhs|)` for `lhs <= rhs` claims.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct LedgerEntry {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LedgerEntry {
    /// Records `lhs <= rhs`, accepted when the normalised slack is at least `-tolerance`.
    pub fn leq(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let slack = (rhs - lhs) / rhs.abs().max(1.0);
        LedgerEntry {
            name: name.into(),
            lhs,
            rhs,
            slack,
            holds: slack >= -tolerance,
            tolerance,
            note: None,
        }
    }

    /// Records `lhs == rhs` for exact (integer) quantities.
    pub fn exact_eq(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        LedgerEntry {
            name: name.into(),
            lhs,
            rhs,
            slack: rhs - lhs,
            holds: lhs == rhs,
            tolerance: 0.0,
            note: None,
        }
    }

    /// Records `lhs ~= rhs`; `slack = -|lhs - rhs| / max(1, |rhs|)`.
    pub fn approx_eq(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let slack = -(lhs - rhs).abs() / rhs.abs().max(1.0);
        LedgerEntry {
            name: name.into(),
            lhs,
            rhs,
            slack,
            holds: slack >= -tolerance,
            tolerance,
            note: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report<T: Serialize> {
    pub manifest: RunManifest,
    pub results: T,
    pub ledger: Vec<LedgerEntry>,
}

impl<T: Serialize> Report<T> {
    pub fn all_hold(&self) -> bool {
        self.ledger.iter().all(|e| e.holds)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(g17(1.0), "1");
        assert_eq!(g17(0.1), "0.10000000000000001");
        assert_eq!(g17(1.0 / 3.0), "0.33333333333333331");
        assert_eq!(g17(-2.5), "-2.5");
        assert_eq!(g17(1e-7), "9.9999999999999995e-08");
        assert_eq!(g17(1e20), "1e+20");
        assert_eq!(g17(123456.0), "123456");
        assert_eq!(g17(f64::NAN), "null");
    }

    #[test]
    fn round_trips() {
        for x in [0.1, 1.0 / 3.0, 2f64.sqrt(), 1e-300, 6.02214076e23, -7.5e-6] {
            assert_eq!(g17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_uses_g17() {
        #[derive(Serialize)]
        struct S {
            a: f64,
            b: Vec<f64>,
        }
        let s = to_json(&S {
            a: 0.1,
            b: vec![1.0, 0.5],
        });
        assert!(s.contains("0.10000000000000001"));
        let back: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["b"][1], 0.5);
    }

    #[test]
    fn ledger_slack() {
        let e = LedgerEntry::leq("x", 2.0, 4.0, 1e-9);
        assert!(e.holds);
        assert_eq!(e.slack, 0.5);
        assert!(!LedgerEntry::leq("y", 5.0, 4.0, 1e-9).holds);
        assert!(LedgerEntry::leq("z", 4.0 + 1e-12, 4.0, 1e-9).holds);
    }
}
