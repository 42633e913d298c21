//! FCIDUMP reader/writer for active-space integrals.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SYMMETRY_TOL: f64 = 1e-12;
const DUPLICATE_TOL: f64 = 1e-10;

/// One- and two-electron integrals over an active space of spatial orbitals.
///
/// `g` is stored in chemists' notation, `(pq|rs)` at `((p*n + q)*n + r)*n + s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MolecularIntegrals {
    pub n_orbitals: usize,
    pub n_electrons: usize,
    pub spin_2s: i32,
    pub core_energy: f64,
    h: Vec<f64>,
    g: Vec<f64>,
}

impl MolecularIntegrals {
    /// Validates shapes and symmetry before accepting the arrays.
    pub fn new(
        n_orbitals: usize,
        n_electrons: usize,
        spin_2s: i32,
        core_energy: f64,
        h: Vec<f64>,
        g: Vec<f64>,
    ) -> Result<Self> {
        let n = n_orbitals;
        if h.len() != n * n || g.len() != n * n * n * n {
            return Err(Error::Integrals(format!(
                "array sizes {}/{} do not match {n} orbitals",
                h.len(),
                g.len()
            )));
        }
        let ints = MolecularIntegrals {
            n_orbitals,
            n_electrons,
            spin_2s,
            core_energy,
            h,
            g,
        };
        ints.validate()?;
        Ok(ints)
    }

    pub fn zeros(n_orbitals: usize, n_electrons: usize, spin_2s: i32) -> Self {
        let n = n_orbitals;
        MolecularIntegrals {
            n_orbitals,
            n_electrons,
            spin_2s,
            core_energy: 0.0,
            h: vec![0.0; n * n],
            g: vec![0.0; n * n * n * n],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n_orbitals;
        if n == 0 {
            return Err(Error::Integrals("no orbitals".into()));
        }
        if self.n_electrons == 0 || self.n_electrons > 2 * n {
            return Err(Error::Integrals(format!(
                "{} electrons do not fit in {n} orbitals",
                self.n_electrons
            )));
        }
        if (self.n_electrons as i32 + self.spin_2s) % 2 != 0
            || self.spin_2s.unsigned_abs() as usize > self.n_electrons
        {
            return Err(Error::Integrals(format!(
                "2S = {} inconsistent with {} electrons",
                self.spin_2s, self.n_electrons
            )));
        }
        for p in 0..n {
            for q in 0..n {
                if (self.h(p, q) - self.h(q, p)).abs() > SYMMETRY_TOL {
                    return Err(Error::Integrals(format!("h not symmetric at ({p},{q})")));
                }
                for r in 0..n {
                    for s in 0..n {
                        let v = self.g(p, q, r, s);
                        let ok = [self.g(q, p, r, s), self.g(p, q, s, r), self.g(r, s, p, q)]
                            .iter()
                            .all(|w| (v - w).abs() <= SYMMETRY_TOL);
                        if !ok {
                            return Err(Error::Integrals(format!(
                                "g lacks 8-fold symmetry at ({p}{q}|{r}{s})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn h(&self, p: usize, q: usize) -> f64 {
        self.h[p * self.n_orbitals + q]
    }

    /// Chemists' `(pq|rs)`.
    #[inline]
    pub fn g(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        let n = self.n_orbitals;
        self.g[((p * n + q) * n + r) * n + s]
    }

    pub fn n_spin_orbitals(&self) -> usize {
        2 * self.n_orbitals
    }

    /// Sets `h[p][q]` and `h[q][p]`.
    pub fn set_h(&mut self, p: usize, q: usize, v: f64) {
        let n = self.n_orbitals;
        self.h[p * n + q] = v;
        self.h[q * n + p] = v;
    }

    /// Sets all eight permutation slots of `(pq|rs)`.
    pub fn set_g(&mut self, p: usize, q: usize, r: usize, s: usize, v: f64) {
        for (a, b, c, d) in eight_fold(p, q, r, s) {
            let n = self.n_orbitals;
            self.g[((a * n + b) * n + c) * n + d] = v;
        }
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        parse_fcidump(&text)
    }

    /// Writes unique entries (`p>=q`, `r>=s`, `pq>=rs`) with 1-based indices.
    pub fn to_fcidump(&self) -> String {
        let n = self.n_orbitals;
        let mut out = String::new();
        let orbsym = vec!["1"; n].join(",");
        let _ = writeln!(
            out,
            " &FCI NORB={n},NELEC={},MS2={},\n  ORBSYM={orbsym},\n  ISYM=1,\n &END",
            self.n_electrons, self.spin_2s
        );
        for p in 0..n {
            for q in 0..=p {
                let pq = p * (p + 1) / 2 + q;
                for r in 0..n {
                    for s in 0..=r {
                        let rs = r * (r + 1) / 2 + s;
                        if rs > pq {
                            continue;
                        }
                        let v = self.g(p, q, r, s);
                        if v != 0.0 {
                            let _ = writeln!(
                                out,
                                "{v:>24.16e} {} {} {} {}",
                                p + 1,
                                q + 1,
                                r + 1,
                                s + 1
                            );
                        }
                    }
                }
            }
        }
        for p in 0..n {
            for q in 0..=p {
                let v = self.h(p, q);
                if v != 0.0 {
                    let _ = writeln!(out, "{v:>24.16e} {} {} 0 0", p + 1, q + 1);
                }
            }
        }
        let _ = writeln!(out, "{:>24.16e} 0 0 0 0", self.core_energy);
        out
    }
}

fn eight_fold(p: usize, q: usize, r: usize, s: usize) -> [(usize, usize, usize, usize); 8] {
    [
        (p, q, r, s),
        (q, p, r, s),
        (p, q, s, r),
        (q, p, s, r),
        (r, s, p, q),
        (s, r, p, q),
        (r, s, q, p),
        (s, r, q, p),
    ]
}

struct Header {
    norb: usize,
    nelec: usize,
    ms2: i32,
}

fn parse_header(text: &str) -> Result<Header> {
    let upper = text.to_ascii_uppercase();
    let body = upper
        .trim()
        .strip_prefix("&FCI")
        .ok_or_else(|| Error::Fcidump {
            line: 1,
            msg: "namelist must start with &FCI".into(),
        })?;
    let mut norb = None;
    let mut nelec = None;
    let mut ms2 = Some(0);
    let mut key: Option<String> = None;
    for raw in body.split([',', ' ', '\n', '\r', '\t']) {
        let tok = raw.trim();
        if tok.is_empty() {
            continue;
        }
        let value = if let Some((k, v)) = tok.split_once('=') {
            key = Some(k.trim().to_string());
            v.trim()
        } else {
            tok
        };
        if value.is_empty() {
            continue;
        }
        let bad = |k: &str| Error::Fcidump {
            line: 1,
            msg: format!("bad value `{value}` for {k}"),
        };
        match key.as_deref() {
            Some("NORB") => norb = Some(value.parse::<usize>().map_err(|_| bad("NORB"))?),
            Some("NELEC") => nelec = Some(value.parse::<usize>().map_err(|_| bad("NELEC"))?),
            Some("MS2") => ms2 = Some(value.parse::<i32>().map_err(|_| bad("MS2"))?),
            Some(_) => {}
            None => {
                return Err(Error::Fcidump {
                    line: 1,
                    msg: format!("unexpected token `{tok}` in namelist"),
                })
            }
        }
    }
    let missing = |k: &str| Error::Fcidump {
        line: 1,
        msg: format!("namelist lacks {k}"),
    };
    Ok(Header {
        norb: norb.ok_or_else(|| missing("NORB"))?,
        nelec: nelec.ok_or_else(|| missing("NELEC"))?,
        ms2: ms2.unwrap_or(0),
    })
}

/// Parses FCIDUMP text, completing the 8-fold permutational symmetry of `g`.
///
/// Lines `(p,0,0,0)` carry orbital energies and are ignored.
pub fn parse_fcidump(text: &str) -> Result<MolecularIntegrals> {
    let lines: Vec<&str> = text.lines().collect();
    let end = lines
        .iter()
        .position(|l| {
            let t = l.trim().to_ascii_uppercase();
            t.starts_with("&END") || t == "/" || t.ends_with("&END") || t.ends_with('/')
        })
        .ok_or_else(|| Error::Fcidump {
            line: lines.len(),
            msg: "unterminated namelist (expected &END or /)".into(),
        })?;
    let mut header_text = lines[..=end].join("\n");
    if let Some(idx) = header_text.to_ascii_uppercase().rfind("&END") {
        header_text.truncate(idx);
    } else if let Some(idx) = header_text.rfind('/') {
        header_text.truncate(idx);
    }
    let header = parse_header(&header_text)?;
    let n = header.norb;
    if n == 0 {
        return Err(Error::Fcidump {
            line: 1,
            msg: "NORB must be positive".into(),
        });
    }

    let mut ints = MolecularIntegrals::zeros(n, header.nelec, header.ms2);
    let mut seen_h = vec![false; n * n];
    let mut seen_g = vec![false; n * n * n * n];
    let mut seen_core = false;

    for (i, line) in lines.iter().enumerate().skip(end + 1) {
        let lineno = i + 1;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(Error::Fcidump {
                line: lineno,
                msg: format!("expected `value p q r s`, got {} fields", fields.len()),
            });
        }
        let value: f64 =
            fields[0]
                .replace(['D', 'd'], "E")
                .parse()
                .map_err(|_| Error::Fcidump {
                    line: lineno,
                    msg: format!("bad value `{}`", fields[0]),
                })?;
        let mut idx = [0usize; 4];
        for (k, f) in fields[1..].iter().enumerate() {
            idx[k] = f.parse().map_err(|_| Error::Fcidump {
                line: lineno,
                msg: format!("bad index `{f}`"),
            })?;
            if idx[k] > n {
                return Err(Error::Fcidump {
                    line: lineno,
                    msg: format!("index {} out of range [1, {n}]", idx[k]),
                });
            }
        }
        let dup = |old: f64| -> Result<()> {
            if (old - value).abs() > DUPLICATE_TOL {
                Err(Error::Fcidump {
                    line: lineno,
                    msg: format!("inconsistent duplicate entry ({old} vs {value})"),
                })
            } else {
                Ok(())
            }
        };
        match idx {
            [0, 0, 0, 0] => {
                if seen_core {
                    dup(ints.core_energy)?;
                }
                ints.core_energy = value;
                seen_core = true;
            }
            [p, 0, 0, 0] if p > 0 => {}
            [p, q, 0, 0] if p > 0 && q > 0 => {
                let (p, q) = (p - 1, q - 1);
                if seen_h[p * n + q] {
                    dup(ints.h(p, q))?;
                }
                ints.set_h(p, q, value);
                seen_h[p * n + q] = true;
                seen_h[q * n + p] = true;
            }
            [p, q, r, s] if p > 0 && q > 0 && r > 0 && s > 0 => {
                let (p, q, r, s) = (p - 1, q - 1, r - 1, s - 1);
                let slot = ((p * n + q) * n + r) * n + s;
                if seen_g[slot] {
                    dup(ints.g(p, q, r, s))?;
                }
                ints.set_g(p, q, r, s, value);
                for (a, b, c, d) in eight_fold(p, q, r, s) {
                    seen_g[((a * n + b) * n + c) * n + d] = true;
                }
            }
            _ => {
                return Err(Error::Fcidump {
                    line: lineno,
                    msg: format!("malformed index pattern {:?}", idx),
                })
            }
        }
    }
    ints.validate().map_err(|e| Error::Fcidump {
        line: 1,
        msg: e.to_string(),
    })?;
    Ok(ints)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "&FCI NORB=2,NELEC=2,MS2=0,\n ORBSYM=1,1,\n ISYM=1,\n&END\n\
        0.6 1 1 1 1\n0.5 2 2 1 1\n0.15 2 1 2 1\n0.55 2 2 2 2\n\
        -1.0 1 1 0 0\n-0.4 2 2 0 0\n0.3 0 0 0 0\n";

    #[test]
    fn header_fields_transcribed() {
        let ints = parse_fcidump(SMALL).unwrap();
        assert_eq!(ints.n_orbitals, 2);
        assert_eq!(ints.n_electrons, 2);
        assert_eq!(ints.spin_2s, 0);
        assert_eq!(ints.core_energy, 0.3);
        assert_eq!(ints.h(1, 1), -0.4);
    }

    #[test]
    fn eight_fold_completion() {
        let ints = parse_fcidump(SMALL).unwrap();
        for (p, q, r, s) in eight_fold(1, 0, 1, 0) {
            assert_eq!(ints.g(p, q, r, s), 0.15);
        }
        assert_eq!(ints.g(0, 0, 1, 1), 0.5);
        assert_eq!(ints.g(1, 1, 0, 0), 0.5);
    }

    #[test]
    fn core_only() {
        let ints = parse_fcidump("&FCI NORB=2,NELEC=2,MS2=0 &END\n0.5 0 0 0 0\n").unwrap();
        assert_eq!(ints.core_energy, 0.5);
        assert!(ints.h.iter().all(|&v| v == 0.0));
        assert!(ints.g.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn slash_terminator_and_fortran_exponent() {
        let ints = parse_fcidump("&FCI NORB=1, NELEC=2, MS2=0\n/\n-1.5D+00 1 1 0 0\n").unwrap();
        assert_eq!(ints.h(0, 0), -1.5);
    }

    #[test]
    fn out_of_range_index() {
        let err = parse_fcidump("&FCI NORB=2,NELEC=2 &END\n0.1 3 1 0 0\n").unwrap_err();
        assert!(matches!(err, Error::Fcidump { line: 2, .. }), "{err}");
    }

    #[test]
    fn inconsistent_duplicates() {
        let text = "&FCI NORB=2,NELEC=2 &END\n0.1 2 1 2 1\n0.2 1 2 1 2\n";
        assert!(parse_fcidump(text).is_err());
        let same = "&FCI NORB=2,NELEC=2 &END\n0.1 2 1 2 1\n0.1 1 2 1 2\n";
        assert!(parse_fcidump(same).is_ok());
    }

    #[test]
    fn malformed_namelist() {
        assert!(parse_fcidump("NORB=2\n0.1 0 0 0 0\n").is_err());
        assert!(parse_fcidump("&FCI NELEC=2 &END\n").is_err());
        assert!(parse_fcidump("&FCI NORB=x,NELEC=2 &END\n").is_err());
        assert!(parse_fcidump("&FCI NORB=2,NELEC=2\n0.1 0 0 0 0\n").is_err());
    }

    #[test]
    fn electron_count_checked() {
        assert!(parse_fcidump("&FCI NORB=1,NELEC=3 &END\n").is_err());
        assert!(parse_fcidump("&FCI NORB=1,NELEC=0 &END\n").is_err());
    }

    #[test]
    fn write_then_parse_is_identity() {
        let ints = parse_fcidump(SMALL).unwrap();
        let again = parse_fcidump(&ints.to_fcidump()).unwrap();
        assert_eq!(ints, again);
    }
}
