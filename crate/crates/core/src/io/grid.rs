//! Side-by-side panels: term visualizations and survey pairs.

use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::io::image::{encode_png, write_file, BitDepth};
use crate::num::Real;
use crate::optics::TermStack;
use crate::raster::Image;

/// Gap between panels, in pixels.
pub const GUTTER: usize = 4;

/// Places images left to right, separated by `gutter` columns of `fill`.
/// All panels must share a height.
pub fn hstack<T: Real>(panels: &[&Image<T>], gutter: usize, fill: T) -> Image<T> {
    let h = panels.iter().map(|p| p.height()).max().unwrap_or(0);
    let total_w = panels.iter().map(|p| p.width()).sum::<usize>() + gutter * panels.len().saturating_sub(1);
    let mut out = Image::filled(total_w, h, [fill; 3]);
    let mut x0 = 0;
    for panel in panels {
        for c in 0..3 {
            let src = panel.channel(c);
            let dst = out.channel_mut(c);
            for y in 0..panel.height() {
                for x in 0..panel.width() {
                    dst.set(x0 + x, y, src.get(x, y));
                }
            }
        }
        x0 += panel.width() + gutter;
    }
    out
}

/// Min-max contrast stretch over all channels of a panel. Returns the
/// stretched panel and the factor 1/(max−min) (0 for a flat panel, which
/// maps to black).
pub fn stretch<T: Real>(panel: &Image<T>) -> (Image<T>, T) {
    match panel.min_max() {
        Some((lo, hi)) if hi > lo => {
            let span = hi - lo;
            (panel.map(|v| ((v - lo) / span).min(T::one())), T::one() / span)
        }
        _ => (panel.map(|_| T::zero()), T::zero()),
    }
}

/// Writes D | F | B with a per-panel contrast stretch. The stretch factors
/// are appended to the file stem; the path actually written is returned.
pub fn emit_term_grid<T: Real>(stack: &TermStack<T>, path: &Path) -> Result<PathBuf> {
    let (d, fd) = stretch(&stack.direct);
    let (f, ff) = stretch(&stack.forward);
    let (b, fb) = stretch(&stack.backscatter);
    let grid = hstack(&[&d, &f, &b], GUTTER, T::one());
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "terms".into());
    let name = format!(
        "{stem}_xD{:.4}_xF{:.4}_xB{:.4}.png",
        fd.to_f64_lossy(),
        ff.to_f64_lossy(),
        fb.to_f64_lossy()
    );
    let target = path.with_file_name(name);
    write_file(&target, &encode_png(&grid, BitDepth::Eight)?)?;
    Ok(target)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hstack_layout() {
        let a = Image::filled(3, 2, [0.1; 3]);
        let b = Image::filled(5, 2, [0.2; 3]);
        let out = hstack(&[&a, &b], 2, 1.0);
        assert_eq!(out.dims(), (10, 2));
        assert_eq!(out.pixel(3, 0), [1.0; 3]);
        assert_eq!(out.pixel(5, 1), [0.2; 3]);
    }

    #[test]
    fn flat_panel_stretches_to_black() {
        let (p, f) = stretch(&Image::filled(2, 2, [0.4; 3]));
        assert!(p.samples().all(|v| v == 0.0));
        assert_eq!(f, 0.0);
    }
}
