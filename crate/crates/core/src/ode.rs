//! Adaptive Dormand–Prince 8(5,3) integrator for small fixed-size systems.
//!
//! Steps are clipped so that every requested output time and every
//! breakpoint of the right-hand side is hit exactly. No interpolation is
//! involved, so output accuracy equals step accuracy.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Tolerances and limits for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rtol: 1e-13,
            atol: 1e-13,
            max_steps: 2_000_000,
        }
    }
}

const STAGES: usize = 12;

const C: [f64; STAGES] = [
    0.0,
    0.526001519587677318785587544488e-01,
    0.789002279381515978178381316732e-01,
    0.118350341907227396726757197510,
    0.281649658092772603273242802490,
    0.333333333333333333333333333333,
    0.25,
    0.307692307692307692307692307692,
    0.651282051282051282051282051282,
    0.6,
    0.857142857142857142857142857142,
    1.0,
];

const A: [[f64; STAGES]; STAGES] = {
    let mut a = [[0.0; STAGES]; STAGES];
    a[1][0] = 5.26001519587677318785587544488e-2;

    a[2][0] = 1.97250569845378994544595329183e-2;
    a[2][1] = 5.91751709536136983633785987549e-2;

    a[3][0] = 2.95875854768068491816892993775e-2;
    a[3][2] = 8.87627564304205475450678981324e-2;

    a[4][0] = 2.41365134159266685502369798665e-1;
    a[4][2] = -8.84549479328286085344864962717e-1;
    a[4][3] = 9.24834003261792003115737966543e-1;

    a[5][0] = 3.7037037037037037037037037037e-2;
    a[5][3] = 1.70828608729473871279604482173e-1;
    a[5][4] = 1.25467687566822425016691814123e-1;

    a[6][0] = 3.7109375e-2;
    a[6][3] = 1.70252211019544039314978060272e-1;
    a[6][4] = 6.02165389804559606850219397283e-2;
    a[6][5] = -1.7578125e-2;

    a[7][0] = 3.70920001185047927108779319836e-2;
    a[7][3] = 1.70383925712239993810214054705e-1;
    a[7][4] = 1.07262030446373284651809199168e-1;
    a[7][5] = -1.53194377486244017527936158236e-2;
    a[7][6] = 8.27378916381402288758473766002e-3;

    a[8][0] = 6.24110958716075717114429577812e-1;
    a[8][3] = -3.36089262944694129406857109825;
    a[8][4] = -8.68219346841726006818189891453e-1;
    a[8][5] = 2.75920996994467083049415600797e1;
    a[8][6] = 2.01540675504778934086186788979e1;
    a[8][7] = -4.34898841810699588477366255144e1;

    a[9][0] = 4.77662536438264365890433908527e-1;
    a[9][3] = -2.48811461997166764192642586468;
    a[9][4] = -5.90290826836842996371446475743e-1;
    a[9][5] = 2.12300514481811942347288949897e1;
    a[9][6] = 1.52792336328824235832596922938e1;
    a[9][7] = -3.32882109689848629194453265587e1;
    a[9][8] = -2.03312017085086261358222928593e-2;

    a[10][0] = -9.3714243008598732571704021658e-1;
    a[10][3] = 5.18637242884406370830023853209;
    a[10][4] = 1.09143734899672957818500254654;
    a[10][5] = -8.14978701074692612513997267357;
    a[10][6] = -1.85200656599969598641566180701e1;
    a[10][7] = 2.27394870993505042818970056734e1;
    a[10][8] = 2.49360555267965238987089396762;
    a[10][9] = -3.0467644718982195003823669022;

    a[11][0] = 2.27331014751653820792359768449;
    a[11][3] = -1.05344954667372501984066689879e1;
    a[11][4] = -2.00087205822486249909675718444;
    a[11][5] = -1.79589318631187989172765950534e1;
    a[11][6] = 2.79488845294199600508499808837e1;
    a[11][7] = -2.85899827713502369474065508674;
    a[11][8] = -8.87285693353062954433549289258;
    a[11][9] = 1.23605671757943030647266201528e1;
    a[11][10] = 6.43392746015763530355970484046e-1;
    a
};

const B: [f64; STAGES] = [
    5.42937341165687622380535766363e-2,
    0.0,
    0.0,
    0.0,
    0.0,
    4.45031289275240888144113950566,
    1.89151789931450038304281599044,
    -5.8012039600105847814672114227,
    3.1116436695781989440891606237e-1,
    -1.52160949662516078556178806805e-1,
    2.01365400804030348374776537501e-1,
    4.47106157277725905176885569043e-2,
];

// Embedded third-order error weights: B minus the third-order solution.
const E3: [f64; STAGES] = {
    let mut e = B;
    e[0] -= 0.244094488188976377952755905512;
    e[8] -= 0.733846688281611857341361741547;
    e[11] -= 0.220588235294117647058823529412e-1;
    e
};

const E5: [f64; STAGES] = [
    0.1312004499419488073250102996e-1,
    0.0,
    0.0,
    0.0,
    0.0,
    -0.1225156446376204440720569753e+1,
    -0.4957589496572501915214079952,
    0.1664377182454986536961530415e+1,
    -0.3503288487499736816886487290,
    0.3341791187130174790297318841,
    0.8192320648511571246570742613e-1,
    -0.2235530786388629525884427845e-1,
];

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 10.0;
const ERROR_EXPONENT: f64 = -1.0 / 8.0;

fn rms<const N: usize>(v: &[f64; N]) -> f64 {
    libm::sqrt(v.iter().map(|x| x * x).sum::<f64>() / N as f64)
}

fn scale_of<const N: usize>(tol: &Tolerances, y: &[f64; N], y_new: &[f64; N]) -> [f64; N] {
    core::array::from_fn(|i| tol.atol + tol.rtol * y[i].abs().max(y_new[i].abs()))
}

fn initial_step<const N: usize, F>(
    f: &mut F,
    t0: f64,
    y0: &[f64; N],
    f0: &[f64; N],
    tol: &Tolerances,
) -> f64
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let scale: [f64; N] = core::array::from_fn(|i| tol.atol + y0[i].abs() * tol.rtol);
    let d0 = rms::<N>(&core::array::from_fn(|i| y0[i] / scale[i]));
    let d1 = rms::<N>(&core::array::from_fn(|i| f0[i] / scale[i]));
    let h0 = if d0 < 1e-5 || d1 < 1e-5 {
        1e-6
    } else {
        0.01 * d0 / d1
    };
    let y1: [f64; N] = core::array::from_fn(|i| y0[i] + h0 * f0[i]);
    let f1 = f(t0 + h0, &y1);
    let d2 = rms::<N>(&core::array::from_fn(|i| (f1[i] - f0[i]) / scale[i])) / h0;
    let h1 = if d1 <= 1e-15 && d2 <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        libm::pow(0.01 / d1.max(d2), 1.0 / 8.0)
    };
    (100.0 * h0).min(h1)
}

/// Integrates `ẏ = f(t, y)` from `times[0]` and returns the state at every
/// entry of `times`.
///
/// `breakpoints` are times where `f` may be discontinuous; no step straddles
/// one. Both slices must be sorted ascending; `times` strictly.
pub fn integrate<const N: usize, F>(
    mut f: F,
    y0: [f64; N],
    times: &[f64],
    breakpoints: &[f64],
    tol: &Tolerances,
) -> Result<Vec<[f64; N]>>
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let Some(&t_start) = times.first() else {
        return Ok(Vec::new());
    };
    if times.windows(2).any(|w| !(w[1] > w[0])) || times.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidTimeGrid(
            "output times must be finite and strictly increasing",
        ));
    }

    let mut out = Vec::with_capacity(times.len());
    out.push(y0);

    let mut t = t_start;
    let mut y = y0;
    // Kahan compensation for the accumulated increments; long runs otherwise
    // lose several ulps of y to repeated rounding.
    let mut comp = [0.0; N];
    let mut fy = f(t, &y);
    let mut h = initial_step(&mut f, t, &y, &fy, tol);
    let mut steps = 0usize;
    let mut bp = breakpoints
        .iter()
        .copied()
        .filter(|&b| b > t_start)
        .peekable();

    for &target in &times[1..] {
        while t < target {
            // The nearest stop is either the next output time or an earlier breakpoint.
            while bp.peek().is_some_and(|&b| b <= t) {
                bp.next();
            }
            let stop = bp.peek().map_or(target, |&b| b.min(target));

            let mut rejected = false;
            loop {
                steps += 1;
                if steps > tol.max_steps {
                    return Err(Error::StepLimit { time: t });
                }
                let min_step = 10.0 * (libm::nextafter(t, f64::INFINITY) - t);
                if h < min_step {
                    return Err(Error::StepSizeUnderflow { time: t });
                }

                let clipped = t + h >= stop;
                let h_try = if clipped { stop - t } else { h };
                let t_new = if clipped { stop } else { t + h_try };

                let mut k = [[0.0; N]; STAGES];
                k[0] = fy;
                for s in 1..STAGES {
                    let ys: [f64; N] = core::array::from_fn(|i| {
                        let mut acc = 0.0;
                        for (j, kj) in k.iter().enumerate().take(s) {
                            acc += A[s][j] * kj[i];
                        }
                        y[i] + h_try * acc
                    });
                    k[s] = f(t + C[s] * h_try, &ys);
                }
                let mut comp_new = comp;
                let y_new: [f64; N] = core::array::from_fn(|i| {
                    let mut acc = 0.0;
                    for (j, kj) in k.iter().enumerate() {
                        acc += B[j] * kj[i];
                    }
                    let v = h_try * acc - comp[i];
                    let sum = y[i] + v;
                    comp_new[i] = (sum - y[i]) - v;
                    sum
                });

                let scale = scale_of(tol, &y, &y_new);
                let mut e5 = 0.0;
                let mut e3 = 0.0;
                for i in 0..N {
                    let mut a5 = 0.0;
                    let mut a3 = 0.0;
                    for (j, kj) in k.iter().enumerate() {
                        a5 += E5[j] * kj[i];
                        a3 += E3[j] * kj[i];
                    }
                    e5 += (a5 / scale[i]) * (a5 / scale[i]);
                    e3 += (a3 / scale[i]) * (a3 / scale[i]);
                }
                let err = if e5 == 0.0 && e3 == 0.0 {
                    0.0
                } else {
                    h_try * e5 / libm::sqrt((e5 + 0.01 * e3) * N as f64)
                };

                if err < 1.0 && y_new.iter().all(|v| v.is_finite()) {
                    let factor = if err == 0.0 {
                        MAX_FACTOR
                    } else {
                        (SAFETY * libm::pow(err, ERROR_EXPONENT)).min(MAX_FACTOR)
                    };
                    let grown = if rejected { h_try } else { h_try * factor };
                    // A step shortened only to land on a stop should not shrink the next one.
                    h = if clipped { grown.max(h) } else { grown };
                    t = t_new;
                    y = y_new;
                    comp = comp_new;
                    fy = f(t, &y);
                    break;
                }
                let factor = if err.is_finite() {
                    (SAFETY * libm::pow(err, ERROR_EXPONENT)).max(MIN_FACTOR)
                } else {
                    MIN_FACTOR
                };
                h = h_try * factor;
                rejected = true;
            }
        }
        out.push(y);
    }
    Ok(out)
}
