//! A uniform harness over the named identities: each one runs at a given `N`
//! (for every `k` where that applies) and produces a serializable report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_size, Counterexample, KrwError, Result};
use crate::krawtchouk::{
    check_diagonal_norms, krawtchouk_table, lattice_point, mirror_check, orthogonality_gram,
};
use crate::model_bargmann::{
    bargmann_adjoint_operators, bargmann_biorthogonality, bargmann_lambda, bargmann_operators,
    check_truncated_2f1_form, TruncationProfile,
};
use crate::model_bg::{
    bg_adjoint_operators, bg_biorthogonality, bg_lambda, bg_lambda_star, bg_operators, check_gen_1f1,
    check_mirror_generating,
};
use crate::model_fd::{
    adjoint_difference_residual, fd_adjoint_operators, fd_biorthogonality, fd_lambda_star, fd_operators,
    first_difference_failure, AdjointDifferenceForm,
};
use crate::pade_kummer::{check_kummer, expected_defect, pade_order_first_defect};
use crate::su2_rep::{
    biorthogonality_gram, build_irrep, build_star_rep, build_tilde_rep, check_x_spectrum,
    coefficient_recurrence_residual, first_recurrence_failure, star_from_tilde, x_adjoint_eigenvector,
    x_eigenvector, LowerCoefficient, RepMatrices,
};

macro_rules! identities {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// The checkable identities, by report name.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Identity {
            $($variant),*
        }

        impl Identity {
            pub const ALL: &'static [Identity] = &[$(Identity::$variant),*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Identity::$variant => $name),*
                }
            }
        }
    };
}

identities! {
    Orthogonality => "orthogonality",
    Duality => "duality",
    Mirror => "mirror",
    Casimir => "casimir",
    Commutators => "commutators",
    EigRep => "eig-rep",
    BiorthoRep => "biortho-rep",
    BiorthoFd => "biortho-fd",
    GenBargmann => "gen-bargmann",
    Form2F1 => "form-2f1",
    BiorthoBargmann => "biortho-bargmann",
    GenBg => "gen-bg",
    GenBgAdjoint => "gen-bg-adjoint",
    MirrorGen => "mirror-gen",
    BiorthoBg => "biortho-bg",
    Kummer => "kummer",
    Pade => "pade",
}

impl Identity {
    /// All report names, comma separated, for usage messages.
    pub fn valid_names() -> String {
        Identity::ALL
            .iter()
            .map(|i| i.name())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = KrwError;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .iter()
            .copied()
            .find(|i| i.name() == s)
            .ok_or_else(|| {
                KrwError::InvalidParameter(format!(
                    "unknown identity `{s}`; valid names: {}",
                    Identity::valid_names()
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A plausible but wrong form of an identity, with a witness that it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedVariant {
    pub form: String,
    pub counterexample: Counterexample,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub identity: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rejected_variants: Vec<RejectedVariant>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Optional parameters beyond `N`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Top parameter for `kummer`; all of `-N..=0` and `1..=3` when absent.
    pub a: Option<i64>,
}

fn every_k(big_n: usize, mut check: impl FnMut(usize) -> Result<()>) -> Result<()> {
    (0..=big_n).try_for_each(&mut check)
}

fn models(big_n: usize) -> Result<Vec<RepMatrices>> {
    Ok(vec![
        build_irrep(big_n)?,
        build_tilde_rep(big_n)?,
        build_star_rep(big_n)?,
        star_from_tilde(big_n)?,
        fd_operators(big_n)?,
        fd_adjoint_operators(big_n)?,
        bargmann_operators(big_n)?.to_rep(),
        bargmann_adjoint_operators(big_n)?.to_rep(),
        bg_operators(big_n)?.to_rep(),
        bg_adjoint_operators(big_n)?.to_rep(),
    ])
}

/// The truncations each differential model is allowed, as `(model, got, want)`.
fn truncation_profiles(big_n: usize) -> Result<Vec<(&'static str, TruncationProfile, TruncationProfile)>> {
    let profile = |j0: Vec<usize>, jp: Vec<usize>, jm: Vec<usize>| TruncationProfile { j0, jp, jm };
    Ok(vec![
        (
            "bargmann",
            bargmann_operators(big_n)?.truncation_profile(),
            profile(vec![], vec![], vec![]),
        ),
        (
            "bargmann-adjoint",
            bargmann_adjoint_operators(big_n)?.truncation_profile(),
            profile(vec![], vec![0], vec![big_n]),
        ),
        (
            "bg",
            bg_operators(big_n)?.truncation_profile(),
            profile(vec![], vec![big_n], vec![]),
        ),
        (
            "bg-adjoint",
            bg_adjoint_operators(big_n)?.truncation_profile(),
            profile(vec![], vec![0], vec![]),
        ),
    ])
}

fn check_commutators_all(big_n: usize) -> Result<()> {
    for rep in models(big_n)? {
        rep.check_commutators()?;
    }
    for (model, got, want) in truncation_profiles(big_n)? {
        if got != want {
            return Err(KrwError::mismatch(
                "commutators",
                Counterexample::new(
                    [("model", model.to_string()), ("N", big_n.to_string())],
                    format!("{want:?}"),
                    format!("{got:?}"),
                ),
            ));
        }
    }
    Ok(())
}

fn check_mirror_lattice(big_n: usize) -> Result<()> {
    for n in 0..=big_n {
        for k in 0..=big_n {
            if !mirror_check(n, k, big_n)? {
                let table = krawtchouk_table(big_n)?;
                let want = crate::scalar::ExactScalar::sign_power(k as i64) * table.get(n, k);
                return Err(KrwError::mismatch(
                    "mirror",
                    Counterexample::new(lattice_point(n, k, big_n), want, table.get(big_n - n, k)),
                ));
            }
        }
    }
    Ok(())
}

fn check_eigen_rep(big_n: usize) -> Result<()> {
    every_k(big_n, |k| {
        x_eigenvector(k, big_n)?;
        x_adjoint_eigenvector(k, big_n)?;
        for n in 0..=big_n {
            let r = coefficient_recurrence_residual(LowerCoefficient::DegreeIndexed, n, k, big_n)?;
            if !r.is_zero() {
                return Err(KrwError::mismatch(
                    "eig-rep",
                    Counterexample::new(lattice_point(n, k, big_n), "0", r),
                ));
            }
        }
        Ok(())
    })?;
    check_x_spectrum(big_n)
}

fn check_biortho_fd(big_n: usize) -> Result<()> {
    check_diagonal_norms("biortho-fd", &fd_biorthogonality(big_n)?, big_n)?;
    every_k(big_n, |k| {
        let f = fd_lambda_star(k, big_n)?;
        for s in 0..=big_n {
            let r = adjoint_difference_residual(AdjointDifferenceForm::FromTranspose, &f, k, s);
            if !r.is_zero() {
                let [_, kk, nn] = lattice_point(s, k, big_n);
                return Err(KrwError::mismatch(
                    "biortho-fd",
                    Counterexample::new([("s", s.to_string()), kk, nn], "0", r),
                ));
            }
        }
        Ok(())
    })
}

fn check_kummer_range(big_n: usize, a: Option<i64>) -> Result<()> {
    match a {
        Some(a) => check_kummer(a, big_n),
        None => (-(big_n as i64)..=0)
            .chain(1..=3)
            .try_for_each(|a| check_kummer(a, big_n)),
    }
}

fn check_pade_row(total: usize) -> Result<()> {
    for n in 0..=total {
        let m = total - n;
        let got = pade_order_first_defect(n, m)?;
        let want = (total + 1, expected_defect(n, m));
        if got != want {
            return Err(KrwError::mismatch(
                "pade",
                Counterexample::new(
                    [("n", n.to_string()), ("m", m.to_string())],
                    format!("z^{} coefficient {}", want.0, want.1),
                    format!("z^{} coefficient {}", got.0, got.1),
                ),
            ));
        }
    }
    Ok(())
}

fn run_identity(identity: Identity, big_n: usize, opts: VerifyOptions) -> Result<()> {
    match identity {
        Identity::Orthogonality => check_diagonal_norms("orthogonality", &orthogonality_gram(big_n)?, big_n),
        Identity::Duality => krawtchouk_table(big_n)?.check_duality(),
        Identity::Mirror => check_mirror_lattice(big_n),
        Identity::Casimir => models(big_n)?.iter().try_for_each(RepMatrices::check_casimir),
        Identity::Commutators => check_commutators_all(big_n),
        Identity::EigRep => check_eigen_rep(big_n),
        Identity::BiorthoRep => check_diagonal_norms("biortho-rep", &biorthogonality_gram(big_n)?, big_n),
        Identity::BiorthoFd => check_biortho_fd(big_n),
        Identity::GenBargmann => every_k(big_n, |k| bargmann_lambda(k, big_n).map(drop)),
        Identity::Form2F1 => every_k(big_n, |k| check_truncated_2f1_form(k, big_n)),
        Identity::BiorthoBargmann => {
            check_diagonal_norms("biortho-bargmann", &bargmann_biorthogonality(big_n)?, big_n)
        }
        Identity::GenBg => every_k(big_n, |k| {
            bg_lambda(k, big_n)?;
            check_gen_1f1(k, big_n)
        }),
        Identity::GenBgAdjoint => every_k(big_n, |k| bg_lambda_star(k, big_n).map(drop)),
        Identity::MirrorGen => every_k(big_n, |k| check_mirror_generating(k, big_n)),
        Identity::BiorthoBg => check_diagonal_norms("biortho-bg", &bg_biorthogonality(big_n)?, big_n),
        Identity::Kummer => check_kummer_range(big_n, opts.a),
        Identity::Pade => check_pade_row(big_n),
    }
}

/// Wrong forms that this identity's report documents with a counterexample.
fn rejected_variants(identity: Identity, big_n: usize) -> Result<Vec<RejectedVariant>> {
    let found = match identity {
        Identity::EigRep => first_recurrence_failure(LowerCoefficient::SpectralIndexed, big_n)?
            .map(|cx| (LowerCoefficient::SpectralIndexed.label(), cx)),
        Identity::BiorthoFd => first_difference_failure(AdjointDifferenceForm::DoubledShift, big_n)?
            .map(|cx| (AdjointDifferenceForm::DoubledShift.label(), cx)),
        _ => None,
    };
    Ok(found
        .into_iter()
        .map(|(form, counterexample)| RejectedVariant {
            form: form.to_string(),
            counterexample,
        })
        .collect())
}

/// Runs one identity at `N`.
///
/// Parameter errors (such as `N = 0`) are returned as `Err`. Any failure
/// inside the computation becomes a `fail` report carrying a counterexample.
pub fn verify(identity: Identity, big_n: usize, opts: VerifyOptions) -> Result<VerifyReport> {
    check_size(big_n)?;
    let mut params = BTreeMap::from([("N".to_string(), big_n.to_string())]);
    if let (Identity::Kummer, Some(a)) = (identity, opts.a) {
        params.insert("a".to_string(), a.to_string());
    }
    let outcome = run_identity(identity, big_n, opts);
    let counterexample =
        match outcome {
            Ok(()) => None,
            Err(e) => Some(e.counterexample().cloned().unwrap_or_else(|| {
                Counterexample::new([("N", big_n.to_string())], "success", e.to_string())
            })),
        };
    Ok(VerifyReport {
        identity: identity.name().to_string(),
        params,
        status: if counterexample.is_none() {
            Status::Pass
        } else {
            Status::Fail
        },
        counterexample,
        rejected_variants: rejected_variants(identity, big_n)?,
    })
}

/// Every identity for `N = 1..=nmax`, sorted by identity name and then `N`.
/// Cells run in parallel; the order of the result does not depend on it.
pub fn verify_all(nmax: usize) -> Result<Vec<VerifyReport>> {
    check_size(nmax)?;
    let mut identities = Identity::ALL.to_vec();
    identities.sort_by_key(|i| i.name());
    let cells: Vec<(Identity, usize)> = identities
        .into_iter()
        .flat_map(|i| (1..=nmax).map(move |n| (i, n)))
        .collect();
    cells
        .into_par_iter()
        .map(|(identity, big_n)| verify(identity, big_n, VerifyOptions::default()))
        .collect()
}
