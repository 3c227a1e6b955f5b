//! Plain-text coefficient files.
//!
//! ```text
//! p 998244353
//! w 15311432 23      (optional: top-level root and its exponent)
//! 1
//! 2
//! 3
//! ```
//!
//! One decimal coefficient per line, each in `[0, p)`. Blank lines are
//! ignored.

use std::fmt::Write as _;

use inplace_tft::{Residue, RingConfig, DEFAULT_MODULUS};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffFile {
    pub modulus: u64,
    /// `(omega_K, K)` from the optional `w` line.
    pub root: Option<(u64, u32)>,
    pub coeffs: Vec<u64>,
}

/// Command-line overrides for the ring parameters.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RingOverrides {
    pub modulus: Option<u64>,
    pub root: Option<u64>,
    pub k: Option<u32>,
}

fn parse_field<T: std::str::FromStr>(
    word: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, CliError> {
    word.and_then(|w| w.parse().ok())
        .ok_or_else(|| CliError::Parse(format!("line {line}: expected {what}")))
}

impl CoeffFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .peekable();

        let (no, header) = lines
            .next()
            .ok_or_else(|| CliError::Parse("empty file".into()))?;
        let mut words = header.split_whitespace();
        if words.next() != Some("p") {
            return Err(CliError::Parse(format!(
                "line {no}: expected 'p <modulus>'"
            )));
        }
        let modulus: u64 = parse_field(words.next(), no, "a modulus")?;
        if words.next().is_some() {
            return Err(CliError::Parse(format!("line {no}: trailing input")));
        }

        let mut root = None;
        if let Some(&(no, line)) = lines.peek() {
            if let Some(rest) = line.strip_prefix('w') {
                let mut words = rest.split_whitespace();
                let omega: u64 = parse_field(words.next(), no, "a root")?;
                let k: u32 = parse_field(words.next(), no, "an exponent")?;
                if words.next().is_some() {
                    return Err(CliError::Parse(format!("line {no}: trailing input")));
                }
                root = Some((omega, k));
                lines.next();
            }
        }

        let mut coeffs = Vec::new();
        for (no, line) in lines {
            let c: u64 = parse_field(Some(line), no, "a decimal coefficient")?;
            if c >= modulus {
                return Err(CliError::Parse(format!(
                    "line {no}: coefficient {c} is not reduced modulo {modulus}"
                )));
            }
            coeffs.push(c);
        }
        if coeffs.is_empty() {
            return Err(CliError::Parse("no coefficients".into()));
        }
        Ok(CoeffFile {
            modulus,
            root,
            coeffs,
        })
    }

    pub fn render(&self) -> String {
        let mut out = format!("p {}\n", self.modulus);
        if let Some((omega, k)) = self.root {
            let _ = writeln!(out, "w {omega} {k}");
        }
        for c in &self.coeffs {
            let _ = writeln!(out, "{c}");
        }
        out
    }

    /// The ring this file asks for, after applying `overrides`.
    pub fn ring(&self, overrides: RingOverrides) -> Result<RingConfig, CliError> {
        let modulus = overrides.modulus.unwrap_or(self.modulus);
        let root = match (overrides.root, overrides.k) {
            (Some(omega), Some(k)) => Some((omega, k)),
            (None, None) if overrides.modulus.is_none() => self.root,
            (None, None) => None,
            _ => {
                return Err(CliError::Config(
                    "--root and --k must be given together".into(),
                ))
            }
        };
        let cfg = match root {
            Some((omega, k)) => RingConfig::new(modulus, omega, k)?,
            None if modulus == DEFAULT_MODULUS => RingConfig::ntt_default(),
            None => RingConfig::from_modulus(modulus)?,
        };
        Ok(cfg)
    }

    /// Coefficients as residues of `cfg`.
    pub fn residues(&self, cfg: &RingConfig) -> Result<Vec<Residue>, CliError> {
        cfg.elements(&self.coeffs)
            .map_err(|e| CliError::Parse(e.to_string()))
    }

    /// A file with the same header (as resolved against `cfg`) and new
    /// coefficients.
    pub fn with_coeffs(
        &self,
        cfg: &RingConfig,
        overrides: RingOverrides,
        coeffs: &[Residue],
    ) -> CoeffFile {
        let explicit_root = self.root.is_some() || overrides.root.is_some();
        CoeffFile {
            modulus: cfg.modulus(),
            root: explicit_root.then(|| (cfg.top_root().value(), cfg.max_level())),
            coeffs: coeffs.iter().map(|c| c.value()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let text = "p 17\nw 3 4\n1\n1\n1\n";
        let f = CoeffFile::parse(text).unwrap();
        assert_eq!(f.modulus, 17);
        assert_eq!(f.root, Some((3, 4)));
        assert_eq!(f.coeffs, [1, 1, 1]);
        assert_eq!(f.render(), text);

        let f = CoeffFile::parse("  p 17 \n\n5\n").unwrap();
        assert_eq!(f.root, None);
        assert_eq!(f.render(), "p 17\n5\n");
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "",
            "q 17\n1\n",
            "p x\n1\n",
            "p 17\n",
            "p 17\n17\n",
            "p 17\n-1\n",
            "p 17\nw 3\n1\n",
            "p 17 4\n1\n",
        ] {
            assert!(
                matches!(CoeffFile::parse(bad), Err(CliError::Parse(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn ring_resolution() {
        let f = CoeffFile::parse("p 17\n1\n").unwrap();
        let cfg = f.ring(RingOverrides::default()).unwrap();
        assert_eq!(
            (cfg.modulus(), cfg.max_level(), cfg.top_root().value()),
            (17, 4, 3)
        );

        let f = CoeffFile::parse("p 17\nw 9 3\n1\n").unwrap();
        let cfg = f.ring(RingOverrides::default()).unwrap();
        assert_eq!(cfg.max_level(), 3);

        let over = RingOverrides {
            modulus: Some(97),
            ..Default::default()
        };
        assert_eq!(f.ring(over).unwrap().modulus(), 97);

        let half = RingOverrides {
            root: Some(3),
            ..Default::default()
        };
        assert!(matches!(f.ring(half), Err(CliError::Config(_))));

        let bad = CoeffFile::parse("p 15\n1\n").unwrap();
        assert!(matches!(
            bad.ring(RingOverrides::default()),
            Err(CliError::Config(_))
        ));
        let bad_root = CoeffFile::parse("p 17\nw 2 4\n1\n").unwrap();
        assert!(matches!(
            bad_root.ring(RingOverrides::default()),
            Err(CliError::Config(_))
        ));
    }
}
