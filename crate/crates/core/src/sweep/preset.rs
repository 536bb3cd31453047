//! Sweep specifications for the figure panels.
//!
//! `fig1*`/`fig2*` are the Werner-family (r_a, r_b) surfaces (the same grid;
//! fig1 plots I_ab, fig2 plots S_ab). `fig3*` and `fig4*` sweep p for the
//! generic pure family, `fig5*` is the (r_a, r_b) surface at p = 0.5,
//! `fig6*` the bidirectional r_a scan with Bob at rest, and `fig7*` the
//! (p, r_a) surface with Bob at rest. The `_unfiltered` variants replace
//! α = 0.1 by the identity filter α = 0.5.

use std::f64::consts::FRAC_PI_4;

use super::{Family, Param, SweepError, SweepSpec};

/// Points per axis for surface presets.
pub const GRID_POINTS: usize = 101;

#[rustfmt::skip]
pub const PRESET_NAMES: &[&str] = &[
    "fig1a", "fig1b", "fig1c", "fig1d", "fig1e", "fig1f",
    "fig2a", "fig2b", "fig2c", "fig2d", "fig2e", "fig2f",
    "fig1a_unfiltered", "fig1d_unfiltered", "fig2a_unfiltered", "fig2d_unfiltered",
    "fig3a", "fig3b", "fig3c",
    "fig4a", "fig4b", "fig4c",
    "fig5a", "fig5b", "fig5c",
    "fig6a", "fig6b", "fig6c",
    "fig7a", "fig7b", "fig7c",
];

fn werner_surface(c: f64, alpha: f64) -> SweepSpec {
    SweepSpec::new(Family::Werner)
        .with_fixed(Param::C11, c)
        .with_fixed(Param::C22, c)
        .with_fixed(Param::C33, c)
        .with_fixed(Param::Alpha, alpha)
        .with_axis(Param::RA, 0.0, FRAC_PI_4, GRID_POINTS)
        .with_axis(Param::RB, 0.0, FRAC_PI_4, GRID_POINTS)
}

fn pure_family() -> SweepSpec {
    SweepSpec::new(Family::GenericPure)
}

/// Returns the sweep for a named figure panel.
pub fn figure_preset(name: &str) -> Result<SweepSpec, SweepError> {
    let unknown = || SweepError::UnknownPreset(name.to_owned());
    let (base, unfiltered) = match name.strip_suffix("_unfiltered") {
        Some(b) => (b, true),
        None => (name, false),
    };
    let (fig, panel) = base
        .strip_prefix("fig")
        .and_then(|rest| {
            let mut chars = rest.chars();
            let fig = chars.next()?.to_digit(10)?;
            let panel = chars.next()?;
            chars.next().is_none().then_some((fig, panel))
        })
        .ok_or_else(unknown)?;
    if unfiltered && !(matches!(fig, 1 | 2) && matches!(panel, 'a' | 'd')) {
        return Err(unknown());
    }

    fn pick<T>(panel: char, a: T, b: T, c: T) -> Option<T> {
        match panel {
            'a' => Some(a),
            'b' => Some(b),
            'c' => Some(c),
            _ => None,
        }
    }
    let three = |a, b, c| pick(panel, a, b, c);

    let spec = match fig {
        1 | 2 => {
            let (c, alpha) = match panel {
                'a' => (-1.0, 0.1),
                'b' => (-1.0, 0.4),
                'c' => (-1.0, 0.7),
                'd' => (-0.8, 0.1),
                'e' => (-0.8, 0.4),
                'f' => (-0.8, 0.7),
                _ => return Err(unknown()),
            };
            werner_surface(c, if unfiltered { 0.5 } else { alpha })
        }
        3 => {
            let (ra, rb) = pick(panel, (0.0, 0.0), (0.5, 0.0), (0.5, 0.5)).ok_or_else(unknown)?;
            pure_family()
                .with_fixed(Param::RA, ra)
                .with_fixed(Param::RB, rb)
                .with_fixed(Param::Alpha, 0.5)
                .with_axis(Param::P, 0.0, 1.0, GRID_POINTS)
        }
        4 => {
            // the three curves (0,0), (0.3,0), (0.3,0.3) sit on a 2×2 corner grid
            let alpha = three(0.1, 0.4, 0.8).ok_or_else(unknown)?;
            pure_family()
                .with_fixed(Param::Alpha, alpha)
                .with_axis(Param::RA, 0.0, 0.3, 2)
                .with_axis(Param::RB, 0.0, 0.3, 2)
                .with_axis(Param::P, 0.0, 1.0, GRID_POINTS)
        }
        5 => {
            let alpha = three(0.1, 0.4, 0.7).ok_or_else(unknown)?;
            pure_family()
                .with_fixed(Param::P, 0.5)
                .with_fixed(Param::Alpha, alpha)
                .with_axis(Param::RA, 0.0, FRAC_PI_4, GRID_POINTS)
                .with_axis(Param::RB, 0.0, FRAC_PI_4, GRID_POINTS)
        }
        6 => {
            let p = three(0.0, 0.6, 0.9).ok_or_else(unknown)?;
            pure_family()
                .with_fixed(Param::P, p)
                .with_fixed(Param::RB, 0.0)
                .with_fixed(Param::Alpha, 0.5)
                .with_axis(Param::RA, 0.0, FRAC_PI_4, GRID_POINTS)
        }
        7 => {
            let alpha = three(0.1, 0.4, 0.8).ok_or_else(unknown)?;
            pure_family()
                .with_fixed(Param::RB, 0.0)
                .with_fixed(Param::Alpha, alpha)
                .with_axis(Param::P, 0.0, 1.0, GRID_POINTS)
                .with_axis(Param::RA, 0.0, FRAC_PI_4, GRID_POINTS)
        }
        _ => return Err(unknown()),
    };
    debug_assert!(spec.validate().is_ok());
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_preset_resolves_and_validates() {
        for name in PRESET_NAMES {
            let spec = figure_preset(name).unwrap_or_else(|e| panic!("{name}: {e}"));
            spec.validate().unwrap();
        }
    }

    #[test]
    fn fig1a_parameters() {
        let s = figure_preset("fig1a").unwrap();
        assert_eq!(s.family, Family::Werner);
        for c in [Param::C11, Param::C22, Param::C33] {
            assert_eq!(s.fixed[&c], -1.0);
        }
        assert_eq!(s.fixed[&Param::Alpha], 0.1);
        assert_eq!(s.grid[0].param, Param::RA);
        assert_eq!(s.grid[1].param, Param::RB);
        assert_eq!(s.point_count(), 101 * 101);
        assert_eq!(
            figure_preset("fig1a_unfiltered").unwrap().fixed[&Param::Alpha],
            0.5
        );
    }

    #[test]
    fn fig5b_parameters() {
        let s = figure_preset("fig5b").unwrap();
        assert_eq!(s.family, Family::GenericPure);
        assert_eq!(s.fixed[&Param::P], 0.5);
        assert_eq!(s.fixed[&Param::Alpha], 0.4);
        assert_eq!(s.grid.len(), 2);
    }

    #[test]
    fn fig6c_parameters() {
        let s = figure_preset("fig6c").unwrap();
        assert_eq!(s.fixed[&Param::P], 0.9);
        assert_eq!(s.fixed[&Param::RB], 0.0);
        assert_eq!(s.grid.len(), 1);
        assert_eq!(s.grid[0].param, Param::RA);
    }

    #[test]
    fn unknown_names() {
        for name in [
            "fig9x",
            "fig1g",
            "fig3d",
            "fig1",
            "fig1aa",
            "fig3a_unfiltered",
            "",
            "FIG1A",
        ] {
            assert!(
                matches!(figure_preset(name), Err(SweepError::UnknownPreset(_))),
                "{name}"
            );
        }
    }
}
