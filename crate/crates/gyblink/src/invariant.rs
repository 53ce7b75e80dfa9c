//! The enhanced link invariant T_S on braid closures, its framed and
//! normalized variants, and its defining properties: Markov-move
//! invariance, multiplicativity on disjoint unions, and the Dubrovnik
//! skein relation at the operator and diagram level.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::gyb::{rep_matrix, CheckReport, EgybOperator, GybOperator, StructuredOp};
use crate::linalg::{kron_pow, spectral_projectors, ComplexMatrix, ToleranceConfig, C64, ONE, ZERO};
use crate::so_n2::{category_data, Channel};

/// Normalization schemes for the invariant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// alpha^{-w} beta^{-n} tr(rho(w) mu-cabled) — the invariant itself.
    Raw,
    /// beta^{-n} tr(...) without the writhe correction (framed value).
    Framed,
    /// tr(mu)^{2m-k} times raw: multiplicative on disjoint unions.
    Section2,
    /// raw divided by 4: value 1 on the unknot.
    Remark54,
}

impl std::str::FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "raw" => Ok(Scheme::Raw),
            "framed" => Ok(Scheme::Framed),
            "section2" => Ok(Scheme::Section2),
            "remark54" => Ok(Scheme::Remark54),
            other => Err(Error::UnknownScheme(other.to_string())),
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Scheme::Raw => "raw",
            Scheme::Framed => "framed",
            Scheme::Section2 => "section2",
            Scheme::Remark54 => "remark54",
        };
        write!(f, "{s}")
    }
}

/// One computed invariant value together with the inputs that produced it.
#[derive(Debug, Clone)]
pub struct InvariantResult {
    pub value: C64,
    pub word: BraidWord,
    pub writhe: i64,
    pub strand_count: usize,
    pub normalization: Scheme,
}

impl std::fmt::Display for InvariantResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "word=[{}] strands={} writhe={} scheme={} value={:.12}{}{:.12}i",
            self.word.format(),
            self.strand_count,
            self.writhe,
            self.normalization,
            self.value.re,
            if self.value.im < 0.0 { "" } else { "+" },
            self.value.im
        )
    }
}

/// The Markov trace tr(rho(w) . mu^(x(n+1))) on V^(n+1), where
/// n = w.strands. Uses the structured column-by-column path whenever
/// the operator has the middle-index coupling structure (memory
/// 2^(n+1) instead of 4^(n+1)); falls back to the dense representation
/// matrix otherwise. n = 1 closes to tr(mu)^2 on V^2.
pub fn markov_trace(s: &EgybOperator, w: &BraidWord, tol: &ToleranceConfig) -> Result<C64> {
    let n = w.strands();
    let d = s.op.ty.d;
    if n == 1 {
        let t = s.enh.mu.trace();
        return Ok(t * t);
    }
    let qubits = n + 1; // k + m(n-2) tensor factors for type (2,3,1)
    let dim = d.pow(qubits as u32);
    let mu_id = s.enh.is_mu_identity(tol);
    if let Ok(structured) = StructuredOp::validate(&s.op, tol) {
        if mu_id {
            return Ok(structured.trace_word(w));
        }
        let mu = &s.enh.mu;
        let total: C64 = (0..dim)
            .into_par_iter()
            .map(|y| {
                let mut v = vec![ZERO; dim];
                let mut scratch = vec![ZERO; dim];
                if mu_id {
                    v[y] = ONE;
                } else {
                    // v = mu^(x qubits) e_y, built as the tensor product of
                    // the columns mu e_{y_t}
                    v[0] = ONE;
                    let mut filled = 1usize;
                    for t in 0..qubits {
                        let bit = (y >> (qubits - 1 - t)) & 1;
                        let (a, b) = (mu[(0, bit)], mu[(1, bit)]);
                        for idx in (0..filled).rev() {
                            let val = v[idx];
                            v[2 * idx] = a * val;
                            v[2 * idx + 1] = b * val;
                        }
                        filled *= 2;
                    }
                }
                structured.apply_word(w, &mut v, &mut scratch);
                v[y]
            })
            .reduce(|| ZERO, |a, b| a + b);
        return Ok(total);
    }
    let rep = rep_matrix(&s.op, w)?;
    let weighted = if mu_id { rep } else { rep.mul(&kron_pow(&s.enh.mu, qubits))? };
    Ok(weighted.trace())
}

/// T_S of the closure of w: alpha^{-writhe} beta^{-strands} times the
/// Markov trace.
pub fn t_invariant(s: &EgybOperator, w: &BraidWord, tol: &ToleranceConfig) -> Result<C64> {
    let tr = markov_trace(s, w, tol)?;
    let alpha_pow = s.enh.alpha.powi(-(w.writhe() as i32));
    let beta_pow = s.enh.beta.powi(-(w.strands() as i32));
    Ok(alpha_pow * beta_pow * tr)
}

/// The framed value alpha^{writhe} T_S = beta^{-strands} tr(...),
/// i.e. the Markov trace without the writhe correction.
pub fn framed_invariant(s: &EgybOperator, w: &BraidWord, tol: &ToleranceConfig) -> Result<C64> {
    let tr = markov_trace(s, w, tol)?;
    Ok(s.enh.beta.powi(-(w.strands() as i32)) * tr)
}

/// The invariant in the requested normalization, with its inputs recorded.
pub fn normalized_invariant(
    s: &EgybOperator,
    w: &BraidWord,
    scheme: Scheme,
    tol: &ToleranceConfig,
) -> Result<InvariantResult> {
    let value = match scheme {
        Scheme::Raw => t_invariant(s, w, tol)?,
        Scheme::Framed => framed_invariant(s, w, tol)?,
        Scheme::Section2 => {
            let (k, m) = (s.op.ty.k as i32, s.op.ty.m as i32);
            s.enh.mu.trace().powi(2 * m - k) * t_invariant(s, w, tol)?
        }
        Scheme::Remark54 => t_invariant(s, w, tol)? / Complex64::new(4.0, 0.0),
    };
    Ok(InvariantResult {
        value,
        word: w.clone(),
        writhe: w.writhe(),
        strand_count: w.strands(),
        normalization: scheme,
    })
}

/// Multiplicativity on disjoint unions:
/// T_S(a U b) = tr(mu)^{2m-k} T_S(a) T_S(b).
pub fn multiplicativity_check(
    s: &EgybOperator,
    a: &BraidWord,
    b: &BraidWord,
    tol: &ToleranceConfig,
) -> Result<CheckReport> {
    let union = a.disjoint_union(b);
    let lhs = t_invariant(s, &union, tol)?;
    let (k, m) = (s.op.ty.k as i32, s.op.ty.m as i32);
    let factor = s.enh.mu.trace().powi(2 * m - k);
    let rhs = factor * t_invariant(s, a, tol)? * t_invariant(s, b, tol)?;
    let residual = (lhs - rhs).norm();
    let bound = tol.abs_tol + tol.rel_tol * lhs.norm().max(rhs.norm());
    Ok(CheckReport::new(
        "multiplicativity",
        residual,
        bound,
        format!("union value {:.6}+{:.6}i", lhs.re, lhs.im),
    ))
}

/// Applies `trials` random sequences of Markov moves (conjugation by a
/// random word and positive/negative stabilization, interleaved) to w
/// and reports the maximum deviation of T_S across all variants.
/// Strand count is capped to keep state vectors small.
pub fn markov_invariance_test(
    s: &EgybOperator,
    w: &BraidWord,
    trials: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> Result<CheckReport> {
    use rand::{Rng, SeedableRng};
    if trials == 0 {
        return Err(Error::Invalid("trials must be >= 1".into()));
    }
    let max_strands = 8usize;
    let reference = t_invariant(s, w, tol)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let mut v = w.clone();
        let moves = rng.gen_range(1..=4usize);
        for _ in 0..moves {
            let stabilize = rng.gen_bool(0.4) && v.strands() < max_strands;
            if stabilize {
                v = v.markov_stabilize(if rng.gen_bool(0.5) { 1 } else { -1 });
            } else if v.strands() >= 2 {
                let g = crate::braid::random_word(v.strands(), rng.gen_range(1..=3), rng.gen())?;
                v = v.markov_conjugate(&g)?;
            }
        }
        let value = t_invariant(s, &v, tol)?;
        worst = worst.max((value - reference).norm());
    }
    let bound = (tol.abs_tol + tol.rel_tol * reference.norm()).max(1e-8);
    Ok(CheckReport::new(
        "markov-invariance",
        worst,
        bound,
        format!("{trials} trials, reference {:.6}+{:.6}i", reference.re, reference.im),
    ))
}

/// The trivial-channel projector doubled: E = 2 P, where P projects
/// onto the eigenvalue matching the unit-channel R-symbol (or its
/// conjugate, whichever realizes the operator's spectrum).
pub fn trivial_channel_doubler(r: &GybOperator, n: i64, tol: &ToleranceConfig) -> Result<ComplexMatrix> {
    let data = category_data(n)?;
    let symbols: Vec<C64> = [Channel::Unit, Channel::Z, Channel::X2]
        .map(|c| data.r_symbol(c))
        .to_vec();
    let conjugated: Vec<C64> = symbols.iter().map(|z| z.conj()).collect();
    for eigs in [&symbols, &conjugated] {
        if let Ok(projectors) = spectral_projectors(&r.matrix, eigs, tol) {
            return Ok(projectors[0].scale(Complex64::new(2.0, 0.0)));
        }
    }
    Err(Error::SpectrumMismatch { residual: f64::NAN })
}

/// Operator-level Dubrovnik relation:
/// R - R^{-1} = eta . 2i sin(pi/N) (Id - E), with trace(E) = 4.
pub fn skein_operator_check(
    s: &EgybOperator,
    n: i64,
    eta: i8,
    tol: &ToleranceConfig,
) -> Result<CheckReport> {
    if eta != 1 && eta != -1 {
        return Err(Error::Invalid("eta must be +-1".into()));
    }
    let r = &s.op;
    let e = trivial_channel_doubler(r, n, tol)?;
    let z = Complex64::new(0.0, 2.0 * (std::f64::consts::PI / n as f64).sin())
        * Complex64::new(eta as f64, 0.0);
    let lhs = r.matrix.sub(&r.matrix.inverse()?)?;
    let rhs = ComplexMatrix::identity(8).sub(&e)?.scale(z);
    let mut residual = lhs.max_dev(&rhs);
    residual = residual.max((e.trace() - Complex64::new(4.0, 0.0)).norm());
    let bound = tol.abs_tol + tol.rel_tol * lhs.max_abs().max(1.0);
    Ok(CheckReport::new(
        "skein-operator",
        residual,
        bound,
        format!("N={n} eta={eta:+}"),
    ))
}

/// Closed-diagram skein quadruples. Two sites are exercised:
/// the bare B_2 crossing (D+, D-, D0, Dinf) =
/// (closure[1], closure[-1], closure[] in B_2, unknot), and the same
/// crossing inserted in front of the trefoil word, where the
/// infinity-smoothing is evaluated by tracing with E at the site.
/// Both instances of the framed relation
/// T~(D+) - T~(D-) = eta . 2i sin(pi/N) (T~(D0) - T~(Dinf))
/// are verified numerically.
pub fn skein_quadruple_check(
    s: &EgybOperator,
    n: i64,
    eta: i8,
    tol: &ToleranceConfig,
) -> Result<CheckReport> {
    if eta != 1 && eta != -1 {
        return Err(Error::Invalid("eta must be +-1".into()));
    }
    let z = Complex64::new(0.0, 2.0 * (std::f64::consts::PI / n as f64).sin())
        * Complex64::new(eta as f64, 0.0);
    let b2 = |letters: &[i32]| BraidWord::new(2, letters.to_vec()).unwrap();
    let framed = |w: &BraidWord| framed_invariant(s, w, tol);

    // bare crossing in B_2; the infinity smoothing is the unknot
    let d_plus = framed(&b2(&[1]))?;
    let d_minus = framed(&b2(&[-1]))?;
    let d_zero = framed(&b2(&[]))?;
    let d_inf = framed(&BraidWord::trivial(1))?;
    let mut residual = ((d_plus - d_minus) - z * (d_zero - d_inf)).norm();

    // crossing at site 1 of the trefoil word [1,1,1]
    let e = trivial_channel_doubler(&s.op, n, tol)?;
    let r2 = s.op.matrix.pow(2)?;
    let beta2 = s.enh.beta.powi(-2);
    let t_plus = framed(&b2(&[1, 1, 1]))?;
    let t_minus = framed(&b2(&[-1, 1, 1]))?;
    let t_zero = framed(&b2(&[1, 1]))?;
    let t_inf = beta2 * e.mul(&r2)?.trace();
    residual = residual.max(((t_plus - t_minus) - z * (t_zero - t_inf)).norm());

    let scale = d_plus.norm().max(t_plus.norm()).max(1.0);
    let bound = tol.abs_tol + tol.rel_tol * scale;
    Ok(CheckReport::new(
        "skein-quadruple",
        residual,
        bound,
        format!("N={n} eta={eta:+}"),
    ))
}

/// Sign convention entering the skein parameter: eta = -1 for N = 3 and +1 for odd N >= 5.
pub fn skein_eta(n: i64) -> i8 {
    if n == 3 {
        -1
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{parse_braid, random_word};
    use crate::gyb::{r_nu, Enhancement};
    use crate::so_n2::build_gyb;
    use std::f64::consts::PI;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn standard_egyb(n: i64) -> EgybOperator {
        EgybOperator::from_channel_sum(build_gyb(n).unwrap()).unwrap()
    }

    fn e(t: f64) -> C64 {
        Complex64::from_polar(1.0, t)
    }

    #[test]
    fn unknot_and_unlinks() {
        let s = standard_egyb(5);
        let unknot = BraidWord::trivial(1);
        let unlink2 = BraidWord::trivial(2);
        assert!((t_invariant(&s, &unknot, &tol()).unwrap() - Complex64::new(4.0, 0.0)).norm() < 1e-12);
        assert!((t_invariant(&s, &unlink2, &tol()).unwrap() - Complex64::new(8.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn kink_is_invariant() {
        for n in [3i64, 5, 9] {
            let s = standard_egyb(n);
            let kink = parse_braid("1", Some(2)).unwrap();
            let v = t_invariant(&s, &kink, &tol()).unwrap();
            assert!((v - Complex64::new(4.0, 0.0)).norm() < 1e-12, "N={n}: {v}");
        }
    }

    #[test]
    fn framed_values_on_b2() {
        let n = 5i64;
        let x = PI / n as f64;
        let s = EgybOperator::from_channel_sum(r_nu(n, 1).unwrap().scale(-ONE).unwrap()).unwrap();
        let f = |letters: &[i32]| {
            framed_invariant(&s, &BraidWord::new(2, letters.to_vec()).unwrap(), &tol()).unwrap()
        };
        assert!((f(&[]) - Complex64::new(8.0, 0.0)).norm() < 1e-12);
        assert!((f(&[1]) - Complex64::new(-4.0, 0.0) * e(-x)).norm() < 1e-12);
        assert!((f(&[-1]) - Complex64::new(-4.0, 0.0) * e(x)).norm() < 1e-12);
    }

    #[test]
    fn normalization_schemes() {
        let s = standard_egyb(7);
        let unknot = BraidWord::trivial(1);
        let unlink2 = BraidWord::trivial(2);
        let v = |w: &BraidWord, scheme: Scheme| normalized_invariant(&s, w, scheme, &tol()).unwrap().value;
        assert!((v(&unknot, Scheme::Remark54) - ONE).norm() < 1e-12);
        assert!((v(&unknot, Scheme::Section2) - Complex64::new(2.0, 0.0)).norm() < 1e-12);
        assert!((v(&unlink2, Scheme::Section2) - Complex64::new(4.0, 0.0)).norm() < 1e-12);
        assert!("bogus".parse::<Scheme>().is_err());
        assert_eq!("section2".parse::<Scheme>().unwrap(), Scheme::Section2);
    }

    #[test]
    fn framed_equals_alpha_writhe_raw() {
        let s = standard_egyb(5);
        let w = parse_braid("1 1 1", Some(2)).unwrap();
        let raw = t_invariant(&s, &w, &tol()).unwrap();
        let framed = framed_invariant(&s, &w, &tol()).unwrap();
        assert!((framed - s.enh.alpha.powi(w.writhe() as i32) * raw).norm() < 1e-12);
    }

    #[test]
    fn structured_and_dense_traces_agree() {
        let s = standard_egyb(7);
        for (n, word) in [(3usize, "1 -2 1 -2"), (4, "1 2 3 -1"), (2, "1 1 1")] {
            let w = parse_braid(word, Some(n)).unwrap();
            let fast = markov_trace(&s, &w, &tol()).unwrap();
            let qubits = n + 1;
            let dense = rep_matrix(&s.op, &w).unwrap();
            let dense_tr = dense.trace();
            let _ = qubits;
            assert!((fast - dense_tr).norm() < 1e-10, "word {word}: {fast} vs {dense_tr}");
        }
    }

    #[test]
    fn trace_with_nontrivial_mu_matches_dense() {
        // a diagonal, non-identity mu exercises the tensor-column path
        let op = build_gyb(5).unwrap();
        let mu = ComplexMatrix::diag(&[ONE, Complex64::new(0.5, 0.25)]);
        let enh = Enhancement::new(mu.clone(), ONE, ONE).unwrap();
        let s = EgybOperator::new(op, enh).unwrap();
        let w = parse_braid("1 2 -1", Some(3)).unwrap();
        let fast = markov_trace(&s, &w, &tol()).unwrap();
        let dense = rep_matrix(&s.op, &w).unwrap().mul(&kron_pow(&mu, 4)).unwrap().trace();
        assert!((fast - dense).norm() < 1e-11);
    }

    #[test]
    fn multiplicativity() {
        let s = standard_egyb(5);
        let unknot = BraidWord::trivial(1);
        let rep = multiplicativity_check(&s, &unknot, &unknot, &tol()).unwrap();
        assert!(rep.pass, "{rep}");
        let union = unknot.disjoint_union(&unknot);
        assert!((t_invariant(&s, &union, &tol()).unwrap() - Complex64::new(8.0, 0.0)).norm() < 1e-12);

        let trefoil = parse_braid("1 1 1", Some(2)).unwrap();
        assert!(multiplicativity_check(&s, &trefoil, &unknot, &ToleranceConfig::abs(1e-9)).unwrap().pass);

        let rand = random_word(3, 6, 11).unwrap();
        assert!(multiplicativity_check(&s, &rand, &BraidWord::trivial(1), &ToleranceConfig::abs(1e-9)).unwrap().pass);
    }

    #[test]
    fn markov_moves_preserve_invariant() {
        let s = standard_egyb(5);
        let trefoil = parse_braid("1 1 1", Some(2)).unwrap();
        let rep = markov_invariance_test(&s, &trefoil, 20, 7, &tol()).unwrap();
        assert!(rep.pass && rep.residual < 1e-8, "{rep}");

        let fig8 = parse_braid("1 -2 1 -2", Some(3)).unwrap();
        assert!(markov_invariance_test(&s, &fig8, 20, 8, &tol()).unwrap().pass);

        let stabilized = BraidWord::trivial(1).markov_stabilize(1);
        let a = t_invariant(&s, &stabilized, &tol()).unwrap();
        let b = t_invariant(&s, &BraidWord::trivial(1), &tol()).unwrap();
        assert!((a - b).norm() < 1e-12);
    }

    #[test]
    fn skein_operator_all_n() {
        for n in (3i64..=13).step_by(2) {
            let s = standard_egyb(n);
            let rep = skein_operator_check(&s, n, skein_eta(n), &ToleranceConfig::abs(1e-11)).unwrap();
            assert!(rep.pass, "{rep}");
            // the wrong sign must fail visibly
            let wrong = skein_operator_check(&s, n, -skein_eta(n), &ToleranceConfig::abs(1e-11)).unwrap();
            assert!(!wrong.pass, "N={n} wrong eta passed");
        }
    }

    #[test]
    fn skein_operator_closed_forms() {
        // explicit family members with their expected eta
        let s5 = EgybOperator::from_channel_sum(r_nu(5, 1).unwrap().scale(-ONE).unwrap()).unwrap();
        assert!(skein_operator_check(&s5, 5, 1, &tol()).unwrap().pass);
        let s3 = EgybOperator::from_channel_sum(r_nu(3, -1).unwrap()).unwrap();
        assert!(skein_operator_check(&s3, 3, -1, &tol()).unwrap().pass);
    }

    #[test]
    fn skein_quadruples_all_n() {
        for n in (3i64..=13).step_by(2) {
            let s = standard_egyb(n);
            let rep = skein_quadruple_check(&s, n, skein_eta(n), &tol()).unwrap();
            assert!(rep.pass, "{rep}");
        }
    }

    #[test]
    fn b2_quadruple_explicit_arithmetic() {
        // N=5: (-4 e^{-i pi/5}) - (-4 e^{i pi/5}) = 8i sin(pi/5) = z (8 - 4)
        let x = PI / 5.0;
        let lhs = Complex64::new(-4.0, 0.0) * (e(-x) - e(x));
        let rhs = Complex64::new(0.0, 2.0 * x.sin()) * Complex64::new(4.0, 0.0);
        assert!((lhs - rhs).norm() < 1e-15);
    }
}
