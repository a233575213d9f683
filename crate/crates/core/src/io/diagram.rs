//! Cusp diagram format:
//!
//! ```text
//! lattice <mu_re> <mu_im> <lambda_re> <lambda_im>
//! ball <center_re> <center_im> <diameter> [label]
//! symmetry <u_re> <u_im> <b_re> <b_im>
//! ```
//!
//! Exactly one `lattice` line, any number of `ball` lines and optional
//! `symmetry` lines declaring maps `z -> u z + b` of the diagram.

use std::fmt::Write as _;

use crate::geometry::{CuspDiagram, CuspLattice, DiagramBall, GeometryError, Symmetry};
use crate::rigor::RigorousComplex;

use super::{records, Cursor, DecimalInterval, IoError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallRecord {
    pub center: [DecimalInterval; 2],
    pub diameter: DecimalInterval,
    pub label: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramFile {
    pub lattice: [DecimalInterval; 4],
    pub balls: Vec<BallRecord>,
    pub symmetries: Vec<[DecimalInterval; 4]>,
}

fn complex(re: &DecimalInterval, im: &DecimalInterval) -> RigorousComplex {
    RigorousComplex::new(re.to_interval(), im.to_interval())
}

impl DiagramFile {
    pub fn parse(text: &str) -> Result<Self, IoError> {
        let mut lattice = None;
        let mut balls = Vec::new();
        let mut symmetries = Vec::new();
        for (line, toks) in records(text) {
            let mut c = Cursor::new(line, &toks);
            let (col, keyword) = c.next("keyword")?;
            match keyword {
                "lattice" => {
                    if lattice.is_some() {
                        return Err(c.error(col, "duplicate lattice line"));
                    }
                    lattice = Some(four(&mut c)?);
                }
                "ball" => {
                    let re = c.interval("center real part")?;
                    let im = c.interval("center imaginary part")?;
                    let diameter = c.interval("diameter")?;
                    let label = match c.optional() {
                        None => None,
                        Some((col, tok)) => match tok.parse::<usize>() {
                            Ok(l) if l >= 1 => Some(l),
                            _ => {
                                return Err(c.error(
                                    col,
                                    format!("label must be a positive integer, found '{tok}'"),
                                ))
                            }
                        },
                    };
                    if diameter.mid.is_negative() {
                        return Err(c.error(col, "diameter must be positive"));
                    }
                    balls.push(BallRecord {
                        center: [re, im],
                        diameter,
                        label,
                    });
                }
                "symmetry" => symmetries.push(four(&mut c)?),
                other => return Err(c.error(col, format!("unknown keyword '{other}'"))),
            }
            c.finish()?;
        }
        let lattice = lattice.ok_or(IoError::Parse {
            line: 1,
            column: 1,
            message: "missing lattice line".into(),
        })?;
        Ok(DiagramFile {
            lattice,
            balls,
            symmetries,
        })
    }

    pub fn to_diagram(&self) -> Result<CuspDiagram, GeometryError> {
        let l = &self.lattice;
        let lattice = CuspLattice::new(complex(&l[0], &l[1]), complex(&l[2], &l[3]))?;
        let balls = self
            .balls
            .iter()
            .map(|b| DiagramBall {
                center: complex(&b.center[0], &b.center[1]),
                diameter: b.diameter.to_interval(),
                label: b.label,
            })
            .collect();
        let symmetries = self
            .symmetries
            .iter()
            .map(|s| Symmetry {
                u: complex(&s[0], &s[1]),
                b: complex(&s[2], &s[3]),
            })
            .collect();
        Ok(CuspDiagram::new(lattice, balls).with_symmetries(symmetries))
    }

    pub fn from_diagram(d: &CuspDiagram) -> Self {
        let enc = |z: &RigorousComplex| {
            [
                DecimalInterval::enclosing(&z.re),
                DecimalInterval::enclosing(&z.im),
            ]
        };
        let [a, b] = enc(&d.lattice.mu);
        let [c, e] = enc(&d.lattice.lambda);
        DiagramFile {
            lattice: [a, b, c, e],
            balls: d
                .balls
                .iter()
                .map(|ball| BallRecord {
                    center: enc(&ball.center),
                    diameter: DecimalInterval::enclosing(&ball.diameter),
                    label: ball.label,
                })
                .collect(),
            symmetries: d
                .symmetries
                .iter()
                .map(|s| {
                    let [a, b] = enc(&s.u);
                    let [c, e] = enc(&s.b);
                    [a, b, c, e]
                })
                .collect(),
        }
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let l = &self.lattice;
        writeln!(out, "lattice {} {} {} {}", l[0], l[1], l[2], l[3]).unwrap();
        for b in &self.balls {
            write!(out, "ball {} {} {}", b.center[0], b.center[1], b.diameter).unwrap();
            if let Some(label) = b.label {
                write!(out, " {label}").unwrap();
            }
            out.push('\n');
        }
        for s in &self.symmetries {
            writeln!(out, "symmetry {} {} {} {}", s[0], s[1], s[2], s[3]).unwrap();
        }
        out
    }
}

fn four(c: &mut Cursor<'_>) -> Result<[DecimalInterval; 4], IoError> {
    Ok([
        c.interval("first real number")?,
        c.interval("second real number")?,
        c.interval("third real number")?,
        c.interval("fourth real number")?,
    ])
}

/// Parses a diagram file straight into a [`CuspDiagram`].
pub fn parse_diagram(text: &str) -> Result<CuspDiagram, IoError> {
    Ok(DiagramFile::parse(text)?.to_diagram()?)
}
