//! Flat `section.key = value` configuration with explicit unit suffixes.
//!
//! Every physical value may carry a unit (`l = 5 Å`, `T_spot = 70 mK`,
//! `G2s = 1.4e-13 cm2/s`). A bare number is read in the key's default unit,
//! listed by [`key_table`]. Values are converted once, here.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use hshift_core::constants::{ANGSTROM, PICOMETER};
use hshift_core::shift::{wall_shift_from_intercept, CORRECTED_DIFFERENCE, SINGLET_LENGTH_LITERATURE};
use hshift_core::{default_constants, KineticsParams, PhysicalConstants, ShiftParams};
use thiserror::Error;

use crate::table::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Levels,
    PairCheck,
    Kinetics,
    Shift,
    Sweep,
    Compare,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::Levels => "levels",
            Self::PairCheck => "pair-check",
            Self::Kinetics => "kinetics",
            Self::Shift => "shift",
            Self::Sweep => "sweep",
            Self::Compare => "compare",
        }
    }

    pub fn default_format(self) -> Format {
        match self {
            Self::Levels | Self::PairCheck | Self::Sweep => Format::Csv,
            Self::Kinetics | Self::Shift | Self::Compare => Format::Kv,
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [Self::Levels, Self::PairCheck, Self::Kinetics, Self::Shift, Self::Sweep, Self::Compare]
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

impl Scale {
    /// `points` values from `min` to `max` inclusive.
    pub fn grid(self, min: f64, max: f64, points: usize) -> Vec<f64> {
        if points == 1 {
            return vec![min];
        }
        let last = (points - 1) as f64;
        (0..points)
            .map(|i| {
                if i == points - 1 {
                    return max;
                }
                let t = i as f64 / last;
                match self {
                    Self::Linear => min + (max - min) * t,
                    Self::Log => min * (max / min).powf(t),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelsGrid {
    pub b_min: f64,
    /// `None` means the configured field.
    pub b_max: Option<f64>,
    pub points: usize,
    pub scale: Scale,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KineticsRun {
    /// Spot b density, cm⁻²; also the density at which shifts are evaluated.
    pub sigma_bs: f64,
    /// `None` integrates for 10 relaxation times.
    pub t_end: Option<f64>,
    pub tol: f64,
    pub trajectory: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Canonical key of the swept variable.
    pub var: &'static str,
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub scale: Scale,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub field_b: f64,
    pub constants: PhysicalConstants,
    pub levels: LevelsGrid,
    pub kinetics: KineticsParams,
    pub run: KineticsRun,
    /// Shift parameters before constants and ΔA_w0 are resolved.
    pub shift: ShiftParams,
    /// Explicit ΔA_w0/h; `None` derives it from C0.
    pub wall_shift_a0: Option<f64>,
    pub sweep: Option<SweepSpec>,
    pub output_path: Option<PathBuf>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn defaults(command: Command) -> Self {
        Self {
            command,
            field_b: 4.6,
            constants: default_constants(),
            levels: LevelsGrid { b_min: 0.0, b_max: None, points: 1, scale: Scale::Linear },
            kinetics: KineticsParams::default(),
            run: KineticsRun { sigma_bs: 1e12, t_end: None, tol: 1e-6, trajectory: false },
            shift: ShiftParams::default(),
            wall_shift_a0: None,
            sweep: None,
            output_path: None,
            format: None,
        }
    }

    /// Shift parameters with the configured constants and ΔA_w0 applied.
    pub fn shift_params(&self) -> ShiftParams {
        let mut p = self.shift;
        p.constants = self.constants;
        p.wall_shift_a0_over_h = self.wall_shift_a0.unwrap_or_else(|| wall_shift_from_intercept(&self.constants, p.c0));
        p
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_else(|| self.command.default_format())
    }

    /// Field values for the `levels` command.
    pub fn level_fields(&self) -> Vec<f64> {
        if self.levels.points == 1 {
            return vec![self.levels.b_max.unwrap_or(self.field_b)];
        }
        let max = self.levels.b_max.unwrap_or(self.field_b);
        self.levels.scale.grid(self.levels.b_min, max, self.levels.points)
    }

    /// Sets a numeric key (value in the key's canonical unit).
    pub fn set_number(&mut self, key: &str, value: f64) -> Result<(), ConfigError> {
        let spec = lookup(key).ok_or_else(|| unknown_key(key, "sweep"))?;
        match spec.kind {
            KeyKind::Number { bound, apply, .. } => {
                bound.check(spec.name, value)?;
                apply(self, value);
                Ok(())
            }
            KeyKind::OptionalNumber { apply, .. } => {
                apply(self, Some(value));
                Ok(())
            }
            _ => Err(ConfigError::BadValue {
                key: spec.name.to_string(),
                location: "sweep".into(),
                message: "not a numeric key".into(),
            }),
        }
    }

    fn validate(&self) -> Result<(), ConfigError> {
        self.kinetics.validate().map_err(|e| ConfigError::Invalid(e.into()))?;
        self.shift_params().validate().map_err(ConfigError::Invalid)?;
        if let Some(s) = &self.sweep {
            if s.scale == Scale::Log && !(s.min > 0.0 && s.max > 0.0) {
                return Err(ConfigError::OutOfRange {
                    key: "sweep.min".into(),
                    value: s.min.min(s.max),
                    bound: "> 0 for a log sweep".into(),
                });
            }
        }
        if self.levels.points > 1 && self.levels.scale == Scale::Log && !(self.levels.b_min > 0.0) {
            return Err(ConfigError::OutOfRange {
                key: "levels.B_min".into(),
                value: self.levels.b_min,
                bound: "> 0 for a log grid".into(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("{location}: syntax error: {message}")]
    Syntax { location: String, message: String },
    #[error("{location}: unknown key {key:?}{}", suggestion.as_ref().map(|s| format!(" (did you mean {s:?}?)")).unwrap_or_default())]
    UnknownKey { key: String, location: String, suggestion: Option<String> },
    #[error("{key} = {value} out of range: must be {bound}")]
    OutOfRange { key: String, value: f64, bound: String },
    #[error("{location}: bad value for {key}: {message}")]
    BadValue { key: String, location: String, message: String },
    #[error("invalid parameters: {0}")]
    Invalid(hshift_core::Error),
    #[error("sweep command needs sweep.var")]
    MissingSweep,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Dim {
    Field,
    Length,
    Temperature,
    Area,
    Density,
    Rate,
    RateConstant,
    KabPrefactor,
    Frequency,
    Slope,
    Vertex,
    Time,
    Scalar,
}

impl Dim {
    /// Accepted unit spellings (normalized) and their factor to the canonical unit.
    fn units(self) -> &'static [(&'static str, f64)] {
        match self {
            Dim::Field => &[("T", 1.0), ("mT", 1e-3), ("G", 1e-4)],
            Dim::Length => &[("m", 1.0), ("nm", 1e-9), ("A", ANGSTROM), ("angstrom", ANGSTROM), ("pm", PICOMETER)],
            Dim::Temperature => &[("K", 1.0), ("mK", 1e-3)],
            Dim::Area => &[("cm2", 1.0), ("m2", 1e4)],
            Dim::Density => &[("cm-2", 1.0), ("m-2", 1e-4)],
            Dim::Rate => &[("s-1", 1.0), ("1/s", 1.0), ("Hz", 1.0)],
            Dim::RateConstant => &[("cm2/s", 1.0), ("cm2*s-1", 1.0), ("m2/s", 1e4)],
            Dim::KabPrefactor => &[("cm2/K1.5/s", 1.0), ("cm2*K-3/2*s-1", 1.0), ("cm2*K-1.5*s-1", 1.0)],
            Dim::Frequency => &[("Hz", 1.0), ("kHz", 1e3), ("MHz", 1e6), ("GHz", 1e9)],
            Dim::Slope => &[("Hz*cm2", 1.0)],
            Dim::Vertex => &[("K*cm2", 1.0), ("mK*cm2", 1e-3)],
            Dim::Time => &[("s", 1.0), ("ms", 1e-3), ("min", 60.0)],
            Dim::Scalar => &[],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Bound {
    Any,
    NonNegative,
    Positive,
    Closed(f64, f64),
}

impl Bound {
    fn check(self, key: &str, value: f64) -> Result<(), ConfigError> {
        let (ok, text) = match self {
            Bound::Any => (value.is_finite(), "finite".to_string()),
            Bound::NonNegative => (value >= 0.0 && value.is_finite(), ">= 0".to_string()),
            Bound::Positive => (value > 0.0 && value.is_finite(), "> 0".to_string()),
            Bound::Closed(lo, hi) => ((lo..=hi).contains(&value), format!("in [{lo}, {hi}]")),
        };
        if ok {
            Ok(())
        } else {
            Err(ConfigError::OutOfRange { key: key.to_string(), value, bound: text })
        }
    }
}

type NumberSetter = fn(&mut RunConfig, f64);
type OptionSetter = fn(&mut RunConfig, Option<f64>);
type TextSetter = fn(&mut RunConfig, &str) -> Result<(), String>;

#[derive(Clone, Copy)]
enum KeyKind {
    Number {
        dim: Dim,
        unit: &'static str,
        bound: Bound,
        apply: NumberSetter,
    },
    /// A number, or `word` to fall back to the computed value.
    OptionalNumber {
        dim: Dim,
        unit: &'static str,
        word: &'static str,
        apply: OptionSetter,
    },
    Text {
        apply: TextSetter,
    },
}

#[derive(Clone, Copy)]
pub struct KeySpec {
    pub name: &'static str,
    kind: KeyKind,
    pub help: &'static str,
}

impl KeySpec {
    /// Part after the section prefix.
    pub fn short(&self) -> &'static str {
        self.name.rsplit('.').next().unwrap_or(self.name)
    }

    pub fn default_unit(&self) -> &'static str {
        match self.kind {
            KeyKind::Number { unit, .. } | KeyKind::OptionalNumber { unit, .. } => unit,
            KeyKind::Text { .. } => "",
        }
    }
}

macro_rules! num {
    ($name:expr, $dim:ident, $unit:expr, $bound:expr, $help:expr, |$c:ident, $v:ident| $body:expr) => {
        KeySpec {
            name: $name,
            kind: KeyKind::Number {
                dim: Dim::$dim,
                unit: $unit,
                bound: $bound,
                apply: |$c: &mut RunConfig, $v: f64| $body,
            },
            help: $help,
        }
    };
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(format!("expected true/false, got {other:?}")),
    }
}

fn parse_scale(s: &str) -> Result<Scale, String> {
    match s {
        "lin" | "linear" => Ok(Scale::Linear),
        "log" => Ok(Scale::Log),
        other => Err(format!("expected lin or log, got {other:?}")),
    }
}

fn sweep_mut(c: &mut RunConfig) -> &mut SweepSpec {
    c.sweep.get_or_insert(SweepSpec { var: "", min: f64::NAN, max: f64::NAN, points: 50, scale: Scale::Log })
}

/// Every accepted key, its unit, bounds and meaning.
pub fn key_table() -> &'static [KeySpec] {
    use Bound::*;
    static TABLE: std::sync::OnceLock<Vec<KeySpec>> = std::sync::OnceLock::new();
    TABLE.get_or_init(|| {
        vec![
            num!("field.B", Field, "T", NonNegative, "static magnetic field", |c, v| c.field_b = v),
            num!("constants.A_over_h", Frequency, "Hz", Positive, "hyperfine constant A/h", |c, v| c
                .constants
                .hyperfine_a_over_h =
                v),
            num!("levels.B_min", Field, "T", NonNegative, "lowest field of the levels grid", |c, v| c.levels.b_min = v),
            num!(
                "levels.B_max",
                Field,
                "T",
                NonNegative,
                "highest field of the levels grid (default field.B)",
                |c, v| c.levels.b_max = Some(v)
            ),
            num!("levels.points", Scalar, "", Closed(1.0, 1e6), "number of levels grid points", |c, v| c
                .levels
                .points =
                v as usize),
            KeySpec {
                name: "levels.scale",
                kind: KeyKind::Text {
                    apply: |c, s| {
                        c.levels.scale = parse_scale(s)?;
                        Ok(())
                    },
                },
                help: "lin or log",
            },
            num!("kinetics.wall_area", Area, "cm2", Positive, "cell wall area A", |c, v| c.kinetics.wall_area = v),
            num!("kinetics.spot_area", Area, "cm2", Positive, "cold spot area A_s", |c, v| c.kinetics.spot_area = v),
            num!("kinetics.G1", Rate, "s-1", NonNegative, "one-body relaxation on the walls", |c, v| c.kinetics.g1 = v),
            num!("kinetics.G1s", Rate, "s-1", NonNegative, "one-body relaxation on the spot", |c, v| c.kinetics.g1s =
                v),
            num!("kinetics.G2", RateConstant, "cm2/s", NonNegative, "two-body relaxation on the walls", |c, v| c
                .kinetics
                .g2 =
                v),
            num!("kinetics.G2s", RateConstant, "cm2/s", NonNegative, "two-body relaxation on the spot", |c, v| c
                .kinetics
                .g2s =
                v),
            num!(
                "kinetics.Kab_prefactor",
                KabPrefactor,
                "cm2/K1.5/s",
                NonNegative,
                "K_ab = prefactor * T^1.5",
                |c, v| c.kinetics.kab_prefactor = v
            ),
            KeySpec {
                name: "kinetics.Kabs",
                kind: KeyKind::OptionalNumber {
                    dim: Dim::RateConstant,
                    unit: "cm2/s",
                    word: "law",
                    apply: |c, v| c.kinetics.kabs = v,
                },
                help: "spot recombination constant, or 'law' for prefactor * T_spot^1.5",
            },
            num!("kinetics.E_a", Temperature, "K", Positive, "adsorption energy (isotherm)", |c, v| c.kinetics.e_a = v),
            num!("kinetics.T_spot", Temperature, "K", Positive, "cold spot temperature", |c, v| c.kinetics.t_spot = v),
            num!("kinetics.T_walls", Temperature, "K", Positive, "wall temperature", |c, v| c.kinetics.t_walls = v),
            num!("kinetics.Phi_a", Rate, "s-1", NonNegative, "incoming a-atom flux", |c, v| c.kinetics.phi_a = v),
            num!("kinetics.sigma_bs", Density, "cm-2", Positive, "spot b-atom density", |c, v| c.run.sigma_bs = v),
            KeySpec {
                name: "kinetics.t_end",
                kind: KeyKind::OptionalNumber {
                    dim: Dim::Time,
                    unit: "s",
                    word: "auto",
                    apply: |c, v| c.run.t_end = v,
                },
                help: "integration time, or 'auto' for 10 relaxation times",
            },
            num!("kinetics.tol", Scalar, "", Closed(1e-14, 0.1), "integrator relative tolerance", |c, v| c.run.tol = v),
            KeySpec {
                name: "kinetics.trajectory",
                kind: KeyKind::Text {
                    apply: |c, s| {
                        c.run.trajectory = parse_bool(s)?;
                        Ok(())
                    },
                },
                help: "emit the integrated trajectory",
            },
            num!("shift.a_t", Length, "A", Positive, "triplet scattering length", |c, v| c.shift.a_t = v),
            num!("shift.a_s", Length, "A", Positive, "singlet scattering length", |c, v| c.shift.a_s = v),
            KeySpec {
                name: "shift.preset",
                kind: KeyKind::Text {
                    apply: |c, s| {
                        c.shift.a_s = match s {
                            "corrected" => c.shift.a_t - CORRECTED_DIFFERENCE,
                            "literature" => SINGLET_LENGTH_LITERATURE,
                            other => return Err(format!("expected corrected or literature, got {other:?}")),
                        };
                        Ok(())
                    },
                },
                help: "scattering lengths: corrected (a_t - a_s = 30 pm) or literature (0.72/0.17 A)",
            },
            num!("shift.l", Length, "A", Positive, "surface-normal delocalization length", |c, v| c.shift.l = v),
            KeySpec {
                name: "shift.Ut",
                kind: KeyKind::OptionalNumber {
                    dim: Dim::Vertex,
                    unit: "K*cm2",
                    word: "formula",
                    apply: |c, v| c.shift.vertex_ut = v,
                },
                help: "effective triplet vertex, or 'formula' for 4 pi hbar^2 a_t/(m l)",
            },
            num!("shift.E_a", Temperature, "K", Positive, "adsorption energy (wall shift)", |c, v| c.shift.e_a = v),
            KeySpec {
                name: "shift.A0",
                kind: KeyKind::OptionalNumber {
                    dim: Dim::Frequency,
                    unit: "Hz",
                    word: "auto",
                    apply: |c, v| c.wall_shift_a0 = v,
                },
                help: "zero-density wall shift dA_w/h, or 'auto' to derive from C0",
            },
            num!("shift.g2", Scalar, "", Closed(0.0, 2.0), "pair correlation g2", |c, v| c.shift.g2 = v),
            num!("shift.C0", Frequency, "Hz", Any, "experimental intercept", |c, v| c.shift.c0 = v),
            num!("shift.C1", Slope, "Hz*cm2", Positive, "experimental slope", |c, v| c.shift.c1 = v),
            KeySpec {
                name: "sweep.var",
                kind: KeyKind::Text {
                    apply: |c, s| {
                        let spec = lookup(s).ok_or_else(|| format!("unknown sweep variable {s:?}"))?;
                        if !matches!(spec.kind, KeyKind::Number { .. } | KeyKind::OptionalNumber { .. }) {
                            return Err(format!("{} is not numeric", spec.name));
                        }
                        sweep_mut(c).var = spec.name;
                        Ok(())
                    },
                },
                help: "key to sweep",
            },
            // Resolved against the swept key's unit in `finish_sweep`.
            KeySpec {
                name: "sweep.min",
                kind: KeyKind::Text { apply: |_, _| Ok(()) },
                help: "sweep start (in the swept key's units)",
            },
            KeySpec {
                name: "sweep.max",
                kind: KeyKind::Text { apply: |_, _| Ok(()) },
                help: "sweep end (in the swept key's units)",
            },
            num!("sweep.points", Scalar, "", Closed(2.0, 1e6), "number of sweep points", |c, v| sweep_mut(c).points =
                v as usize),
            KeySpec {
                name: "sweep.scale",
                kind: KeyKind::Text {
                    apply: |c, s| {
                        sweep_mut(c).scale = parse_scale(s)?;
                        Ok(())
                    },
                },
                help: "lin or log",
            },
            KeySpec {
                name: "output.path",
                kind: KeyKind::Text {
                    apply: |c, s| {
                        c.output_path = Some(PathBuf::from(s));
                        Ok(())
                    },
                },
                help: "output file",
            },
            KeySpec {
                name: "output.format",
                kind: KeyKind::Text {
                    apply: |c, s| {
                        c.format = Some(s.parse()?);
                        Ok(())
                    },
                },
                help: "csv or kv",
            },
        ]
    })
}

/// Exact canonical name, or a unique short name.
fn lookup(key: &str) -> Option<&'static KeySpec> {
    let table = key_table();
    table.iter().find(|k| k.name == key).or_else(|| {
        let mut hits = table.iter().filter(|k| k.short() == key);
        let first = hits.next()?;
        hits.next().is_none().then_some(first)
    })
}

/// All keys a (possibly short) name refers to. Short names shared by
/// several sections (E_a) set all of them.
fn resolve(key: &str) -> Vec<&'static KeySpec> {
    let table = key_table();
    if let Some(k) = table.iter().find(|k| k.name == key) {
        return vec![k];
    }
    table.iter().filter(|k| k.short() == key).collect()
}

fn unknown_key(key: &str, location: &str) -> ConfigError {
    let best = key_table()
        .iter()
        .flat_map(|k| [(k.name, k.name), (k.short(), k.name)])
        .map(|(candidate, full)| (strsim::jaro_winkler(key, candidate), candidate, full))
        .max_by(|a, b| a.0.total_cmp(&b.0));
    let suggestion = best.filter(|(score, _, _)| *score > 0.7).map(|(_, candidate, full)| {
        if lookup(candidate).is_some() {
            candidate.to_string()
        } else {
            full.to_string()
        }
    });
    ConfigError::UnknownKey { key: key.to_string(), location: location.to_string(), suggestion }
}

fn normalize_unit(unit: &str) -> String {
    let mut out = String::with_capacity(unit.len());
    let mut pending_join = false;
    for ch in unit.trim().chars() {
        let mapped = match ch {
            'Å' => Some('A'),
            '²' => Some('2'),
            '⁻' => Some('-'),
            '¹' => Some('1'),
            '³' => Some('3'),
            '^' => None,
            '·' | '*' => {
                pending_join = true;
                None
            }
            c if c.is_whitespace() => {
                pending_join = true;
                None
            }
            c => Some(c),
        };
        if let Some(c) = mapped {
            if pending_join && !out.is_empty() && c != '/' && !out.ends_with('/') {
                out.push('*');
            }
            pending_join = false;
            out.push(c);
        }
    }
    out
}

/// Splits `"1.4e-13 cm2/s"` into the number and the unit text.
fn split_number(raw: &str) -> Result<(f64, &str), String> {
    let raw = raw.trim();
    let end = raw
        .char_indices()
        .find(|&(i, c)| !(c.is_ascii_digit() || c == '.' || c == '+' || c == '-' || ((c == 'e' || c == 'E') && i > 0)))
        .map(|(i, _)| i)
        .unwrap_or(raw.len());
    // Back off a trailing exponent marker that belongs to no exponent.
    let mut end = end;
    while end > 0 && raw[..end].parse::<f64>().is_err() {
        end -= 1;
    }
    if end == 0 {
        return Err(format!("expected a number, got {raw:?}"));
    }
    let value: f64 = raw[..end].parse().map_err(|e| format!("{e}"))?;
    Ok((value, raw[end..].trim()))
}

fn convert(dim: Dim, default_unit: &str, raw: &str) -> Result<f64, String> {
    let (value, unit) = split_number(raw)?;
    let unit = if unit.is_empty() { default_unit.to_string() } else { normalize_unit(unit) };
    if dim == Dim::Scalar {
        return if unit.is_empty() { Ok(value) } else { Err(format!("expected a plain number, got unit {unit:?}")) };
    }
    dim.units().iter().find(|(u, _)| *u == unit).map(|(_, f)| value * f).ok_or_else(|| {
        let accepted: Vec<&str> = dim.units().iter().map(|(u, _)| *u).collect();
        format!("unit {unit:?} not accepted (use one of {})", accepted.join(", "))
    })
}

struct Entry {
    key: String,
    value: String,
    location: String,
}

fn lex(text: &str, label: impl Fn(usize) -> String) -> Result<Vec<Entry>, ConfigError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
            location: label(i + 1),
            message: format!("expected key = value, got {content:?}"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || key.split('.').count() > 2 || key.contains(char::is_whitespace) {
            return Err(ConfigError::Syntax { location: label(i + 1), message: format!("malformed key {key:?}") });
        }
        if value.is_empty() {
            return Err(ConfigError::Syntax { location: label(i + 1), message: format!("missing value for {key}") });
        }
        out.push(Entry { key: key.to_string(), value: value.to_string(), location: label(i + 1) });
    }
    Ok(out)
}

/// Parses a configuration document for `command`.
pub fn parse_config(text: &str, command: Command) -> Result<RunConfig, ConfigError> {
    parse_config_with_overrides(text, &[], command)
}

/// Parses a document, then applies `key=value` overrides in order.
pub fn parse_config_with_overrides(
    text: &str,
    overrides: &[String],
    command: Command,
) -> Result<RunConfig, ConfigError> {
    let mut entries = lex(text, |n| format!("line {n}"))?;
    for (i, o) in overrides.iter().enumerate() {
        entries.extend(lex(o, |_| format!("--set #{}", i + 1))?);
    }

    let mut cfg = RunConfig::defaults(command);
    let mut sweep_bounds: [Option<(String, String)>; 2] = [None, None];
    for e in &entries {
        let specs = resolve(&e.key);
        if specs.is_empty() {
            return Err(unknown_key(&e.key, &e.location));
        }
        for spec in specs {
            let bad = |message: String| ConfigError::BadValue {
                key: spec.name.to_string(),
                location: e.location.clone(),
                message,
            };
            match spec.kind {
                KeyKind::Number { dim, unit, bound, apply } => {
                    let v = convert(dim, unit, &e.value).map_err(bad)?;
                    bound.check(spec.name, v)?;
                    apply(&mut cfg, v);
                }
                KeyKind::OptionalNumber { dim, unit, word, apply } => {
                    if e.value == word {
                        apply(&mut cfg, None);
                    } else {
                        let v = convert(dim, unit, &e.value).map_err(bad)?;
                        Bound::NonNegative.check(spec.name, v).or_else(|err| {
                            if spec.name == "shift.A0" {
                                Ok(())
                            } else {
                                Err(err)
                            }
                        })?;
                        apply(&mut cfg, Some(v));
                    }
                }
                KeyKind::Text { apply } => {
                    match spec.name {
                        "sweep.min" => sweep_bounds[0] = Some((e.value.clone(), e.location.clone())),
                        "sweep.max" => sweep_bounds[1] = Some((e.value.clone(), e.location.clone())),
                        _ => {}
                    }
                    apply(&mut cfg, &e.value).map_err(bad)?;
                }
            }
        }
    }
    finish_sweep(&mut cfg, sweep_bounds)?;
    cfg.validate()?;
    Ok(cfg)
}

fn finish_sweep(cfg: &mut RunConfig, bounds: [Option<(String, String)>; 2]) -> Result<(), ConfigError> {
    if bounds.iter().any(Option::is_some) && cfg.sweep.is_none() {
        sweep_mut(cfg);
    }
    let Some(sweep) = cfg.sweep.as_mut() else {
        return if cfg.command == Command::Sweep { Err(ConfigError::MissingSweep) } else { Ok(()) };
    };
    if sweep.var.is_empty() {
        return Err(ConfigError::MissingSweep);
    }
    let spec = lookup(sweep.var).expect("validated when sweep.var was set");
    let (dim, unit) = match spec.kind {
        KeyKind::Number { dim, unit, .. } | KeyKind::OptionalNumber { dim, unit, .. } => (dim, unit),
        KeyKind::Text { .. } => unreachable!("sweep.var only accepts numeric keys"),
    };
    for (slot, name) in bounds.into_iter().zip(["sweep.min", "sweep.max"]) {
        let (raw, location) = slot.ok_or_else(|| ConfigError::BadValue {
            key: name.to_string(),
            location: "document".into(),
            message: "required for a sweep".into(),
        })?;
        let v = convert(dim, unit, &raw).map_err(|message| ConfigError::BadValue {
            key: name.to_string(),
            location,
            message,
        })?;
        if name == "sweep.min" {
            sweep.min = v;
        } else {
            sweep.max = v;
        }
    }
    Ok(())
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scale::Linear => "lin",
            Scale::Log => "log",
        })
    }
}
