//! The golden tele-echography fixture: parsing expectations, element
//! decomposition, candidate coverage and the worksheet rows it must carry
//! after annotation.

use seqfmeca_core::catalog::{enumerate_candidates, CandidateElement, ErrorModelId, ProfileConfig};
use seqfmeca_core::fmeca::{init_worksheet, load_annotations, merge_annotations, rank_rows, RiskMatrix};
use seqfmeca_core::model::{allocation_lints, message_elements, validate_model, ActorKind};
use seqfmeca_core::trace::{mutate, nominal_trace};
use seqfmeca_core::{dsl, Probability, Severity, SystemModel};

fn fixture_path(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn ter_model() -> SystemModel {
    let text = std::fs::read_to_string(fixture_path("ter.rau")).unwrap();
    let result = dsl::parse(&text, "ter.rau");
    assert!(result.diagnostics.is_empty(), "{:?}", result.diagnostics);
    result.model.unwrap()
}

#[test]
fn fixture_parses_to_the_expected_shape() {
    let model = ter_model();
    assert_eq!(model.name, "TER");
    assert_eq!(model.actor("Operator").map(|a| a.kind), Some(ActorKind::Human));
    assert_eq!(
        model.actor("MasterSite").map(|a| a.kind),
        Some(ActorKind::ExternalSystem)
    );
    assert!(model.objects.contains(&"ControlSystem".to_string()));

    let interaction = model.interaction("InstallInit").unwrap();
    assert_eq!(interaction.realizes.as_deref(), Some("Install/Init Control System"));
    let operations: Vec<&str> = interaction.messages.iter().map(|m| m.operation.as_str()).collect();
    assert_eq!(
        operations,
        [
            "Set power supply",
            "Set air pressure in artificial muscles",
            "Launch teleoperation"
        ]
    );
    // The air-pressure step comes strictly after the power-supply step.
    let air = interaction.message("m2").unwrap();
    assert_eq!(air.predecessors, ["m1"]);
}

#[test]
fn fixture_is_well_formed_with_warnings_only() {
    let model = ter_model();
    assert!(validate_model(&model).is_empty());
    let lints = allocation_lints(&model);
    assert!(lints.iter().all(|d| !d.is_error()));
}

#[test]
fn air_pressure_elements_have_power_supply_as_previous() {
    let model = ter_model();
    let interaction = model.interaction("InstallInit").unwrap();
    let elements = message_elements(interaction, "m2").unwrap();
    let previous = elements.previous.unwrap();
    assert_eq!(previous.operation, "Set power supply");
    assert_eq!(elements.next.unwrap().id, "m3");
    assert_eq!(elements.parameters.len(), 1);
}

#[test]
fn air_pressure_candidates_cover_the_worksheet_rows() {
    let model = ter_model();
    let candidates = enumerate_candidates(&model, &ProfileConfig::default());
    let of_m2: Vec<_> = candidates
        .items
        .iter()
        .filter(|c| c.message.as_deref() == Some("m2"))
        .collect();
    assert!(of_m2
        .iter()
        .any(|c| c.error == ErrorModelId::E2
            && c.element == Some(CandidateElement::Predecessor("m1".into()))));
    assert!(of_m2.iter().any(|c| c.id == "InstallInit/m2/E3/-/-"));
    assert!(of_m2.iter().any(|c| c.id == "InstallInit/m2/E8/pressure/above_max"));
    assert_eq!(candidates.items.len(), 15);
}

#[test]
fn wrong_order_mutant_swaps_air_pressure_and_power_supply() {
    let model = ter_model();
    let interaction = model.interaction("InstallInit").unwrap();
    let candidates = enumerate_candidates(&model, &ProfileConfig::default());
    let e2 = candidates.get("InstallInit/m2/E2/m1/-").unwrap();
    let mutants = mutate(interaction, e2, 0).unwrap();
    assert_eq!(mutants.len(), 1);
    let ids = mutants[0].trace.message_ids();
    assert_eq!(ids, ["m2", "m1", "m3"]);
    // And the nominal order is intact.
    let nominal = nominal_trace(interaction).unwrap();
    assert_eq!(nominal.message_ids(), ["m1", "m2", "m3"]);
}

#[test]
fn merged_worksheet_reproduces_the_three_annotated_rows() {
    let model = ter_model();
    let candidates = enumerate_candidates(&model, &ProfileConfig::default());
    let worksheet = init_worksheet(&model, &candidates).unwrap();
    let annotations =
        load_annotations(&std::fs::read_to_string(fixture_path("ter_annotations.json")).unwrap())
            .unwrap();
    let (merged, diags) = merge_annotations(&worksheet, &annotations);
    assert!(diags.is_empty(), "{diags:?}");

    let omission = merged.row("InstallInit/m2/E3/-/-").unwrap();
    assert_eq!(omission.severity, Some(Severity::Minor));
    assert_eq!(omission.probability, Some(Probability::Probable));

    let wrong_order = merged.row("InstallInit/m2/E2/m1/-").unwrap();
    assert_eq!(wrong_order.severity, Some(Severity::Severe));
    assert_eq!(wrong_order.probability, Some(Probability::Probable));
    assert!(wrong_order.failure_mode_text.contains("before Set power supply"));

    let too_high = merged.row("InstallInit/m2/E8/pressure/above_max").unwrap();
    assert_eq!(too_high.severity, Some(Severity::Catastrophic));
    assert_eq!(too_high.probability, Some(Probability::Occasional));

    // The pressure row outranks everything else under the default matrix.
    let ranked = rank_rows(&merged, &RiskMatrix::default_matrix());
    assert_eq!(ranked[0].candidate_id, "InstallInit/m2/E8/pressure/above_max");
}

#[test]
fn fixture_round_trips_through_the_serializer() {
    let model = ter_model();
    let canonical = dsl::serialize(&model);
    let reparsed = dsl::parse(&canonical, "ter.rau");
    assert_eq!(reparsed.model.as_ref(), Some(&model));
}
