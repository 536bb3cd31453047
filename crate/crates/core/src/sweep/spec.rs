use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{figure_preset, SweepError};

/// Every parameter a sweep can fix or vary.
///
/// `alpha` sets both filter strengths; `alpha_a`/`alpha_b` set them
/// individually. `s_*`, `t_*` and the off-diagonal `c_ij` only apply to the
/// explicit family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    RA,
    RB,
    Alpha,
    AlphaA,
    AlphaB,
    P,
    Q,
    C11,
    C12,
    C13,
    C21,
    C22,
    C23,
    C31,
    C32,
    C33,
    Sx,
    Sy,
    Sz,
    Tx,
    Ty,
    Tz,
}

impl Param {
    pub const ALL: [Param; 22] = [
        Param::RA,
        Param::RB,
        Param::Alpha,
        Param::AlphaA,
        Param::AlphaB,
        Param::P,
        Param::Q,
        Param::C11,
        Param::C12,
        Param::C13,
        Param::C21,
        Param::C22,
        Param::C23,
        Param::C31,
        Param::C32,
        Param::C33,
        Param::Sx,
        Param::Sy,
        Param::Sz,
        Param::Tx,
        Param::Ty,
        Param::Tz,
    ];
    pub const COUNT: usize = Self::ALL.len();

    pub fn name(self) -> &'static str {
        match self {
            Param::RA => "r_a",
            Param::RB => "r_b",
            Param::Alpha => "alpha",
            Param::AlphaA => "alpha_a",
            Param::AlphaB => "alpha_b",
            Param::P => "p",
            Param::Q => "q",
            Param::C11 => "c11",
            Param::C12 => "c12",
            Param::C13 => "c13",
            Param::C21 => "c21",
            Param::C22 => "c22",
            Param::C23 => "c23",
            Param::C31 => "c31",
            Param::C32 => "c32",
            Param::C33 => "c33",
            Param::Sx => "s_x",
            Param::Sy => "s_y",
            Param::Sz => "s_z",
            Param::Tx => "t_x",
            Param::Ty => "t_y",
            Param::Tz => "t_z",
        }
    }

    pub fn from_name(name: &str) -> Option<Param> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    /// Checks `v` against the parameter's physical domain.
    pub fn check(self, v: f64) -> Result<(), SweepError> {
        let ok = v.is_finite()
            && match self {
                Param::RA | Param::RB => (0.0..=FRAC_PI_4).contains(&v),
                Param::Alpha | Param::AlphaA | Param::AlphaB => v > 0.0 && v < 1.0,
                Param::P | Param::Q => (0.0..=1.0).contains(&v),
                _ => (-1.0..=1.0).contains(&v),
            };
        if ok {
            return Ok(());
        }
        let range = match self {
            Param::RA | Param::RB => "[0, pi/4]",
            Param::Alpha | Param::AlphaA | Param::AlphaB => "(0, 1)",
            Param::P | Param::Q => "[0, 1]",
            _ => "[-1, 1]",
        };
        Err(SweepError::domain(
            self.name(),
            format!("{v} not in {range}"),
        ))
    }

    fn is_channel(self) -> bool {
        matches!(
            self,
            Param::RA | Param::RB | Param::Alpha | Param::AlphaA | Param::AlphaB
        )
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Werner,
    GenericPure,
    Explicit,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Werner => "werner",
            Family::GenericPure => "generic_pure",
            Family::Explicit => "explicit",
        }
    }

    /// Whether `p` is a state parameter of this family.
    pub fn accepts(self, p: Param) -> bool {
        match self {
            Family::Werner => matches!(p, Param::C11 | Param::C22 | Param::C33),
            Family::GenericPure => matches!(p, Param::P | Param::Q),
            Family::Explicit => !matches!(p, Param::P | Param::Q) && !p.is_channel(),
        }
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "werner" => Ok(Family::Werner),
            "generic_pure" => Ok(Family::GenericPure),
            "explicit" => Ok(Family::Explicit),
            other => Err(format!(
                "unknown family `{other}` (expected werner, generic_pure or explicit)"
            )),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Only one processing order is supported: the acceleration channel acts
/// first, the filter is applied to the accelerated state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FilterOrder {
    #[default]
    AccelerateThenFilter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!(
                "unknown output format `{other}` (expected csv or json)"
            )),
        }
    }
}

/// Inclusive, evenly spaced axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridAxis {
    pub param: Param,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl GridAxis {
    pub fn new(param: Param, start: f64, stop: f64, points: usize) -> Self {
        Self {
            param,
            start,
            stop,
            points,
        }
    }

    pub fn value(&self, k: usize) -> f64 {
        if self.points <= 1 {
            return self.start;
        }
        if k + 1 == self.points {
            return self.stop;
        }
        self.start + (self.stop - self.start) * (k as f64) / ((self.points - 1) as f64)
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|k| self.value(k)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub family: Family,
    pub fixed: BTreeMap<Param, f64>,
    pub grid: Vec<GridAxis>,
    pub filter_order: FilterOrder,
    pub output: OutputFormat,
    pub output_path: Option<PathBuf>,
}

impl SweepSpec {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            fixed: BTreeMap::new(),
            grid: Vec::new(),
            filter_order: FilterOrder::default(),
            output: OutputFormat::default(),
            output_path: None,
        }
    }

    pub fn with_fixed(mut self, param: Param, value: f64) -> Self {
        self.set_fixed(param, value);
        self
    }

    pub fn with_axis(mut self, param: Param, start: f64, stop: f64, points: usize) -> Self {
        self.set_axis(GridAxis::new(param, start, stop, points));
        self
    }

    /// Fixes `param`, dropping any grid axis over it.
    pub fn set_fixed(&mut self, param: Param, value: f64) {
        self.grid.retain(|a| a.param != param);
        self.fixed.insert(param, value);
    }

    /// Adds or replaces the grid axis over `axis.param`, dropping any fixed
    /// value for it.
    pub fn set_axis(&mut self, axis: GridAxis) {
        self.fixed.remove(&axis.param);
        match self.grid.iter_mut().find(|a| a.param == axis.param) {
            Some(existing) => *existing = axis,
            None => self.grid.push(axis),
        }
    }

    /// Number of rows a run produces.
    pub fn point_count(&self) -> usize {
        self.grid.iter().map(|a| a.points).product()
    }

    fn mentions(&self, p: Param) -> bool {
        self.fixed.contains_key(&p) || self.grid.iter().any(|a| a.param == p)
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        for (&p, &v) in &self.fixed {
            self.check_applicable(p)?;
            p.check(v)?;
        }
        for (k, axis) in self.grid.iter().enumerate() {
            self.check_applicable(axis.param)?;
            if axis.points == 0 {
                return Err(SweepError::domain(
                    axis.param.name(),
                    "grid needs at least one point",
                ));
            }
            axis.param.check(axis.start)?;
            axis.param.check(axis.stop)?;
            if self.fixed.contains_key(&axis.param) {
                return Err(SweepError::domain(
                    axis.param.name(),
                    "both fixed and on the grid",
                ));
            }
            if self.grid[..k].iter().any(|a| a.param == axis.param) {
                return Err(SweepError::domain(
                    axis.param.name(),
                    "appears twice on the grid",
                ));
            }
        }
        if self.mentions(Param::Alpha)
            && (self.mentions(Param::AlphaA) || self.mentions(Param::AlphaB))
        {
            return Err(SweepError::domain(
                "alpha",
                "cannot be combined with alpha_a/alpha_b",
            ));
        }
        match self.family {
            Family::Werner => {
                for p in [Param::C11, Param::C22, Param::C33] {
                    if !self.mentions(p) {
                        return Err(SweepError::domain(
                            p.name(),
                            "required by the werner family",
                        ));
                    }
                }
            }
            Family::GenericPure => match (self.mentions(Param::P), self.mentions(Param::Q)) {
                (true, true) => {
                    return Err(SweepError::domain("p", "give either p or q, not both"));
                }
                (false, false) => {
                    return Err(SweepError::domain("q", "generic_pure needs p or q"));
                }
                _ => {}
            },
            Family::Explicit => {}
        }
        Ok(())
    }

    fn check_applicable(&self, p: Param) -> Result<(), SweepError> {
        if p.is_channel() || self.family.accepts(p) {
            Ok(())
        } else {
            Err(SweepError::domain(
                p.name(),
                format!("not a parameter of the {} family", self.family),
            ))
        }
    }
}

/// Parses a number, accepting `pi`, `pi/<x>` and `<x>*pi` besides plain
/// floats, each optionally negated.
fn parse_value(text: &str) -> Option<f64> {
    let t = text.trim();
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, t),
    };
    let v = if body == "pi" {
        PI
    } else if let Some(den) = body.strip_prefix("pi/") {
        PI / den.trim().parse::<f64>().ok()?
    } else if let Some(num) = body.strip_suffix("*pi") {
        num.trim().parse::<f64>().ok()? * PI
    } else {
        body.parse::<f64>().ok()?
    };
    Some(sign * v)
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Top,
    Fixed,
    Grid,
}

/// Parses the plain-text sweep description.
///
/// ```text
/// # comment
/// preset = fig1a            # optional base, must come first
/// family = werner
/// output = csv
/// output_path = fig.csv
/// c11 = -1                  # top-level parameters are fixed values
/// [fixed]
/// alpha = 0.4
/// [grid]
/// r_a = 0, pi/4, 101        # start, stop, points (inclusive)
/// ```
pub fn parse_spec(text: &str) -> Result<SweepSpec, SweepError> {
    let mut spec: Option<SweepSpec> = None;
    let mut section = Section::Top;
    let mut seen_keys: Vec<String> = Vec::new();
    let mut saw_content = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('[') {
            section = match line {
                "[grid]" => Section::Grid,
                "[fixed]" => Section::Fixed,
                other => {
                    return Err(SweepError::parse(
                        line_no,
                        format!("unknown section {other}"),
                    ))
                }
            };
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(SweepError::parse(
                line_no,
                format!("expected `key = value`, got `{line}`"),
            ));
        };
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(SweepError::parse(line_no, "empty key or value"));
        }
        if seen_keys.iter().any(|k| k == key) {
            return Err(SweepError::parse(line_no, format!("duplicate key `{key}`")));
        }
        seen_keys.push(key.to_owned());

        if section == Section::Top {
            match key {
                "preset" => {
                    if saw_content {
                        return Err(SweepError::parse(
                            line_no,
                            "`preset` must precede other keys",
                        ));
                    }
                    spec = Some(figure_preset(value)?);
                    saw_content = true;
                    continue;
                }
                "family" => {
                    let family = value.parse().map_err(|e| SweepError::parse(line_no, e))?;
                    match spec.as_mut() {
                        Some(s) => s.family = family,
                        None => spec = Some(SweepSpec::new(family)),
                    }
                    saw_content = true;
                    continue;
                }
                "output" | "output_path" | "filter_order" => {
                    saw_content = true;
                    let s = spec.as_mut().ok_or_else(|| {
                        SweepError::parse(line_no, "`family` or `preset` must come first")
                    })?;
                    match key {
                        "output" => {
                            s.output = value.parse().map_err(|e| SweepError::parse(line_no, e))?
                        }
                        "output_path" => s.output_path = Some(PathBuf::from(value)),
                        _ => {
                            if value != "accelerate_then_filter" {
                                return Err(SweepError::parse(
                                    line_no,
                                    format!("unsupported filter_order `{value}`"),
                                ));
                            }
                        }
                    }
                    continue;
                }
                _ => {}
            }
        }

        let param = Param::from_name(key)
            .ok_or_else(|| SweepError::parse(line_no, format!("unknown key `{key}`")))?;
        let s = spec
            .as_mut()
            .ok_or_else(|| SweepError::parse(line_no, "`family` or `preset` must come first"))?;
        saw_content = true;

        if section == Section::Grid {
            let parts: Vec<&str> = value.split(',').map(str::trim).collect();
            let [start, stop, points] = parts[..] else {
                return Err(SweepError::parse(
                    line_no,
                    "grid entries are `start, stop, points`",
                ));
            };
            let start = parse_value(start)
                .ok_or_else(|| SweepError::parse(line_no, format!("bad number `{start}`")))?;
            let stop = parse_value(stop)
                .ok_or_else(|| SweepError::parse(line_no, format!("bad number `{stop}`")))?;
            let points: usize = points
                .parse()
                .map_err(|_| SweepError::parse(line_no, format!("bad point count `{points}`")))?;
            s.set_axis(GridAxis::new(param, start, stop, points));
        } else {
            let v = parse_value(value)
                .ok_or_else(|| SweepError::parse(line_no, format!("bad number `{value}`")))?;
            s.set_fixed(param, v);
        }
    }

    let spec = spec.ok_or_else(|| SweepError::parse(0, "no `family` or `preset` given"))?;
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_document() {
        let text = "\
# singlet under equal acceleration
family = werner
output = json
output_path = out.json
filter_order = accelerate_then_filter
c11 = -1
c22 = -1
[fixed]
c33 = -1
alpha = 0.4
[grid]
r_a = 0, pi/4, 11
r_b = 0, pi/4, 11   # trailing comment
";
        let spec = parse_spec(text).unwrap();
        assert_eq!(spec.family, Family::Werner);
        assert_eq!(spec.output, OutputFormat::Json);
        assert_eq!(spec.output_path, Some(PathBuf::from("out.json")));
        assert_eq!(spec.fixed[&Param::C33], -1.0);
        assert_eq!(spec.fixed[&Param::Alpha], 0.4);
        assert_eq!(spec.grid.len(), 2);
        assert_eq!(spec.grid[0].param, Param::RA);
        assert_eq!(spec.grid[1].stop, FRAC_PI_4);
        assert_eq!(spec.point_count(), 121);
    }

    #[test]
    fn preset_is_a_base() {
        let spec = parse_spec("preset = fig1a\n").unwrap();
        assert_eq!(spec.family, Family::Werner);
        assert_eq!(spec.fixed[&Param::C11], -1.0);
        assert_eq!(spec.fixed[&Param::Alpha], 0.1);
        assert_eq!(
            spec.grid.iter().map(|a| a.points).collect::<Vec<_>>(),
            [101, 101]
        );

        let spec = parse_spec("preset = fig1a\nalpha = 0.5\n[fixed]\nr_b = 0\n").unwrap();
        assert_eq!(spec.fixed[&Param::Alpha], 0.5);
        assert_eq!(spec.grid.len(), 1);
        assert_eq!(spec.point_count(), 101);

        let err = parse_spec("family = werner\npreset = fig1a\n").unwrap_err();
        assert!(matches!(err, SweepError::Parse { line: 2, .. }));
    }

    #[test]
    fn out_of_domain_values() {
        let err =
            parse_spec("family = werner\nc11=-1\nc22=-1\nc33=-1\n[grid]\nalpha = 0.1, 1.2, 5\n")
                .unwrap_err();
        assert!(
            matches!(err, SweepError::Domain { ref param, .. } if param == "alpha"),
            "{err}"
        );

        let err = parse_spec("family = generic_pure\nq = 1.5\n").unwrap_err();
        assert!(matches!(err, SweepError::Domain { ref param, .. } if param == "q"));

        let err = parse_spec("family = generic_pure\nq = 0.5\nr_a = 0.9\n").unwrap_err();
        assert!(matches!(err, SweepError::Domain { ref param, .. } if param == "r_a"));
    }

    #[test]
    fn structural_errors_carry_line_numbers() {
        let cases = [
            ("family = werner\n\nbogus = 1\n", 3),
            ("family = werner\n[grid]\nr_a = 0, 1\n", 3),
            ("family = werner\n[axes]\n", 2),
            ("family = werner\nc11 = abc\n", 2),
            ("family = werner\nc11 = 1\nc11 = 2\n", 3),
            ("c11 = 1\n", 1),
            ("family = spinor\n", 1),
            (
                "family = werner\nfilter_order = filter_then_accelerate\n",
                2,
            ),
            ("family werner\n", 1),
        ];
        for (text, line) in cases {
            match parse_spec(text) {
                Err(SweepError::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?}: expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn family_constraints() {
        let missing = parse_spec("family = werner\nc11 = -1\nc22 = -1\n").unwrap_err();
        assert!(matches!(missing, SweepError::Domain { ref param, .. } if param == "c33"));

        let both = parse_spec("family = generic_pure\np = 0.5\nq = 0.5\n").unwrap_err();
        assert!(matches!(both, SweepError::Domain { .. }));

        let foreign = parse_spec("family = werner\nc11=-1\nc22=-1\nc33=-1\nq = 0.5\n").unwrap_err();
        assert!(matches!(foreign, SweepError::Domain { ref param, .. } if param == "q"));

        let mixed_alpha =
            parse_spec("family = generic_pure\nq = 1\nalpha = 0.3\nalpha_a = 0.2\n").unwrap_err();
        assert!(matches!(mixed_alpha, SweepError::Domain { .. }));

        let clash = parse_spec("family = generic_pure\nq = 1\nr_a = 0\n[grid]\nr_a = 0, 0.5, 3\n")
            .unwrap_err();
        assert!(matches!(clash, SweepError::Parse { line: 5, .. }));

        assert!(parse_spec("family = explicit\ns_x = 0.3\nc12 = 0.1\n").is_ok());
    }

    #[test]
    fn empty_grid_is_single_point() {
        let spec = parse_spec("family = generic_pure\np = 0.3\nr_a = 0.2\n").unwrap();
        assert!(spec.grid.is_empty());
        assert_eq!(spec.point_count(), 1);
    }

    #[test]
    fn zero_points_rejected() {
        let err =
            parse_spec("family = generic_pure\np = 0.3\n[grid]\nr_a = 0, 0.5, 0\n").unwrap_err();
        assert!(matches!(err, SweepError::Domain { .. }));
    }

    #[test]
    fn value_syntax() {
        assert_eq!(parse_value("pi"), Some(PI));
        assert_eq!(parse_value("pi/4"), Some(FRAC_PI_4));
        assert_eq!(parse_value("-pi/4"), Some(-FRAC_PI_4));
        assert_eq!(parse_value("0.25*pi"), Some(0.25 * PI));
        assert_eq!(parse_value("1e-3"), Some(1e-3));
        assert_eq!(parse_value("pie"), None);
    }

    #[test]
    fn axis_values_are_inclusive() {
        let a = GridAxis::new(Param::RA, 0.0, FRAC_PI_4, 5);
        let v = a.values();
        assert_eq!(v.len(), 5);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[4], FRAC_PI_4);
        assert_eq!(GridAxis::new(Param::P, 0.3, 0.9, 1).values(), [0.3]);
    }
}
