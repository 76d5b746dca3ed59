#![allow(dead_code)]

use std::f64::consts::PI;

use anyon_core::{AnyonModel, FusionRing, Label, C64};

pub const ONE: Label = Label(0);
pub const TAU: Label = Label(1);

pub fn phi() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

pub fn cis(x: f64) -> C64 {
    C64::from_polar(1.0, x)
}

pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Fibonacci numbers with fib(0) = 0, fib(1) = 1, by plain iteration.
pub fn fib(k: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..k {
        (a, b) = (b, a + b);
    }
    a
}

/// Z_3 anyons: trivial F, `R^{ab} = ω^{ab}`, `θ_a = ω^{a²}`.
pub fn z3() -> AnyonModel {
    let names = vec!["1".to_string(), "a".into(), "b".into()];
    let mut quads = Vec::new();
    for i in 0..3u32 {
        for j in 0..3u32 {
            quads.push([i, j, (i + j) % 3, 1]);
        }
    }
    let ring = FusionRing::from_quadruples(names, vec![0, 2, 1], &quads).unwrap();
    let w = |k: usize| cis(2.0 * PI * (k % 3) as f64 / 3.0);
    let mut f = Vec::new();
    for a in 1..3 {
        for b in 1..3 {
            for c in 1..3 {
                let (e, fi, d) = ((a + b) % 3, (b + c) % 3, (a + b + c) % 3);
                f.push(([a, b, c, d, e, fi].map(Label), re(1.0)));
            }
        }
    }
    let mut r = Vec::new();
    for a in 1..3 {
        for b in 1..3 {
            r.push(([a, b, (a + b) % 3].map(Label), w(a * b)));
        }
    }
    let theta = (0..3).map(|a| w(a * a)).collect();
    AnyonModel::new(ring, f, r, theta).unwrap()
}

/// Ising anyons `{1, σ, ψ}`.
pub fn ising() -> AnyonModel {
    let (i, s, p) = (Label(0), Label(1), Label(2));
    let ring = FusionRing::from_quadruples(
        vec!["1".into(), "sigma".into(), "psi".into()],
        vec![0, 1, 2],
        &[
            [0, 0, 0, 1],
            [0, 1, 1, 1],
            [0, 2, 2, 1],
            [1, 0, 1, 1],
            [2, 0, 2, 1],
            [1, 1, 0, 1],
            [1, 1, 2, 1],
            [1, 2, 1, 1],
            [2, 1, 1, 1],
            [2, 2, 0, 1],
        ],
    )
    .unwrap();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut f = Vec::new();
    for a in [s, p] {
        for b in [s, p] {
            for c in [s, p] {
                for d in ring.labels() {
                    for e in ring.labels() {
                        for g in ring.labels() {
                            let admissible = ring.admissible(a, b, e)
                                && ring.admissible(e, c, d)
                                && ring.admissible(b, c, g)
                                && ring.admissible(a, g, d);
                            if !admissible {
                                continue;
                            }
                            let value = if [a, b, c, d] == [s, s, s, s] {
                                if e == p && g == p {
                                    -h
                                } else {
                                    h
                                }
                            } else if [a, b, c, d] == [s, p, s, p] || [a, b, c, d] == [p, s, p, s] {
                                -1.0
                            } else {
                                1.0
                            };
                            f.push(([a, b, c, d, e, g], re(value)));
                        }
                    }
                }
            }
        }
    }
    let r = vec![
        ([s, s, i], cis(-PI / 8.0)),
        ([s, s, p], cis(3.0 * PI / 8.0)),
        ([s, p, s], cis(-PI / 2.0)),
        ([p, s, s], cis(-PI / 2.0)),
        ([p, p, i], re(-1.0)),
    ];
    let theta = vec![re(1.0), cis(PI / 8.0), re(-1.0)];
    AnyonModel::new(ring, f, r, theta).unwrap()
}
