use super::autocorr::AutocorrelationSeries;

pub const DEFAULT_PEAK_THRESHOLD: f64 = 0.1;

/// Local maximum of `|A|²`, refined between samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub time: f64,
    pub magnitude: f64,
}

/// Interior local maxima of `|A|²` above `threshold`.
///
/// A sample is a maximum when it rises strictly above its left neighbour
/// and is not below its right one, so flat plateaus report once. Each
/// maximum is refined with the parabola through it and its neighbours.
pub fn detect_peaks(series: &AutocorrelationSeries, threshold: f64) -> Vec<Peak> {
    let t = &series.times;
    let y = &series.magnitudes_sq;
    let mut out = Vec::new();
    if y.len() < 3 {
        return out;
    }
    for i in 1..y.len() - 1 {
        let (y0, y1, y2) = (y[i - 1], y[i], y[i + 1]);
        if !(y1 > threshold && y1 > y0 && y1 >= y2) {
            continue;
        }
        let curv = y0 - 2.0 * y1 + y2;
        let (dt, mag) = if curv < 0.0 {
            let delta = 0.5 * (y0 - y2) / curv;
            let h = if delta >= 0.0 { t[i + 1] - t[i] } else { t[i] - t[i - 1] };
            (delta * h, y1 - 0.25 * (y0 - y2) * delta)
        } else {
            (0.0, y1)
        };
        out.push(Peak {
            time: t[i] + dt,
            magnitude: mag,
        });
    }
    out
}
