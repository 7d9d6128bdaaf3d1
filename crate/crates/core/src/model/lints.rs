//! Task-allocation lints.
//!
//! These run on a well-formed model and flag allocation decisions that tend
//! to hide hazards: unallocated or actor-less use cases, humans loaded with
//! too many concurrent tasks, and interactions that realize use cases placed
//! outside the system.

use super::{ActorKind, SystemModel};
use crate::diag::{sort_diagnostics, Diagnostic, DiagnosticCode as Code, ModelPath};

/// Tunable thresholds for the lints.
#[derive(Debug, Clone)]
pub struct LintOptions {
    /// A human actor linked to at least this many use cases gets a
    /// concurrent-load warning.
    pub human_load_threshold: usize,
}

impl Default for LintOptions {
    fn default() -> Self {
        Self {
            human_load_threshold: 3,
        }
    }
}

/// Runs the allocation lints with default thresholds.
pub fn allocation_lints(model: &SystemModel) -> Vec<Diagnostic> {
    allocation_lints_with(model, &LintOptions::default())
}

/// Runs the allocation lints with explicit thresholds.
pub fn allocation_lints_with(model: &SystemModel, options: &LintOptions) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let root = ModelPath::new(format!("system[{}]", model.name));

    for use_case in &model.use_cases {
        let path = root.child("usecase", &use_case.name);
        if model.boundary.get(&use_case.name).is_none() {
            diags.push(Diagnostic::warning(
                Code::UsecaseNoAllocation,
                crate::diag::Location::Path(path.clone()),
                format!("use case `{}` has no boundary allocation", use_case.name),
            ));
        }
        if use_case.linked_actors.is_empty() {
            diags.push(Diagnostic::warning(
                Code::UsecaseNoActor,
                crate::diag::Location::Path(path),
                format!("use case `{}` is linked to no actor", use_case.name),
            ));
        }
    }

    for actor in &model.actors {
        if actor.kind != ActorKind::Human {
            continue;
        }
        let load = model
            .use_cases
            .iter()
            .filter(|u| u.linked_actors.iter().any(|a| a == &actor.name))
            .count();
        if load >= options.human_load_threshold {
            diags.push(Diagnostic::warning(
                Code::HumanConcurrentLoad,
                crate::diag::Location::Path(root.child("actor", &actor.name)),
                format!(
                    "human actor `{}` is linked to {load} use cases and may have to manage them simultaneously",
                    actor.name
                ),
            ));
        }
    }

    for interaction in &model.interactions {
        if let Some(realized) = &interaction.realizes {
            if model.boundary.get(realized) == Some(super::Allocation::Excluded) {
                diags.push(Diagnostic::warning(
                    Code::RealizesExcluded,
                    crate::diag::Location::Path(root.child("interaction", &interaction.name)),
                    format!(
                        "interaction `{}` realizes use case `{realized}` which is allocated outside the system",
                        interaction.name
                    ),
                ));
            }
        }
    }

    sort_diagnostics(&mut diags);
    diags
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Actor, Allocation, Interaction, UseCase};

    fn model_with_usecases(titles: &[&str], actor: &str) -> SystemModel {
        let mut model = SystemModel::new("M");
        model.actors.push(Actor {
            name: actor.into(),
            kind: ActorKind::Human,
        });
        for title in titles {
            model.use_cases.push(UseCase {
                name: title.to_string(),
                linked_actors: vec![actor.into()],
                description: String::new(),
            });
            model.boundary.set(title.to_string(), Allocation::InsideSystem);
        }
        model
    }

    #[test]
    fn four_linked_usecases_warn_about_concurrent_load() {
        let model = model_with_usecases(&["Scan", "Probe", "Patient", "Diagnose"], "Specialist");
        let diags = allocation_lints(&model);
        let loads: Vec<_> = diags.iter().filter(|d| d.code == Code::HumanConcurrentLoad).collect();
        assert_eq!(loads.len(), 1);
        assert!(loads[0].text.contains("Specialist"));
    }

    #[test]
    fn two_linked_usecases_are_fine() {
        let model = model_with_usecases(&["Scan", "Probe"], "Specialist");
        assert!(allocation_lints(&model).is_empty());
    }

    #[test]
    fn threshold_is_configurable() {
        let model = model_with_usecases(&["Scan", "Probe"], "Specialist");
        let opts = LintOptions {
            human_load_threshold: 2,
        };
        assert_eq!(allocation_lints_with(&model, &opts).len(), 1);
    }

    #[test]
    fn realizing_an_excluded_usecase_warns() {
        let mut model = model_with_usecases(&["Scan"], "Specialist");
        model.use_cases.push(UseCase {
            name: "Shipping".into(),
            linked_actors: vec!["Specialist".into()],
            description: String::new(),
        });
        model.boundary.set("Shipping", Allocation::Excluded);
        let mut i = Interaction::new("I");
        i.realizes = Some("Shipping".into());
        model.interactions.push(i);

        let diags = allocation_lints(&model);
        assert!(diags.iter().any(|d| d.code == Code::RealizesExcluded));
    }

    #[test]
    fn missing_allocation_and_actor_warn() {
        let mut model = SystemModel::new("M");
        model.use_cases.push(UseCase {
            name: "Orphan".into(),
            linked_actors: vec![],
            description: String::new(),
        });
        let diags = allocation_lints(&model);
        assert_eq!(diags.len(), 2);
        assert!(diags.iter().any(|d| d.code == Code::UsecaseNoAllocation));
        assert!(diags.iter().any(|d| d.code == Code::UsecaseNoActor));
    }
}
