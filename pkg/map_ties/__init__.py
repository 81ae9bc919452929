#!usr/bin/env

#import prior weights
from map_ties.weights.weights import (
  LaurentWeight,
  parse_weight,
  format_weight,
  parse_rational,
  format_rational,
  as_weight,
  eval_weight )

#import the instance model
from map_ties.model.model import (
  ENUMERATION_LIMIT,
  Instance,
  build_instance,
  restricted_distance,
  joint_weight,
  weight_table,
  instance_to_json,
  instance_from_json,
  load_instance,
  dump_instance )

#import output classification and the bounds
from map_ties.classify.classify import (
  Metrics,
  Classification,
  BoundReport,
  metrics,
  classify,
  tie_set,
  error_set,
  tie_indices,
  map_decode,
  verify_theorem,
  classification_rows,
  classification_table,
  bound_table )

#import partitions, levels, atoms and their checks
from map_ties.partitions.partitions import (
  DifferSet,
  RefinedPartition,
  TiePartition,
  LevelPartition,
  AtomPartition,
  PartitionReport,
  ChainReport,
  differ_set,
  refine,
  tie_partition,
  tie_partitions,
  level_partition,
  atom_partition,
  partition_report,
  partition_reports,
  check_prop1,
  check_prop2,
  check_prop3,
  check_prop4,
  check_prop9,
  check_refinement,
  check_appendixB,
  check_uniform,
  bound_chain )

#import the property harness
from map_ties.harness.harness import (
  FuzzConfig,
  SuiteReport,
  FuzzReport,
  random_instance,
  run_suite,
  run_fuzz )

#import sampling estimates
from map_ties.montecarlo.montecarlo import (
  Estimate,
  MetricEstimates,
  estimate_metrics,
  check_agreement,
  check_labels )

#import presets and helpers
from map_ties.instances import (
  example_one,
  refinement_example,
  repetition_two )

from map_ties.extra import (
  MapTiesError,
  WeightSyntaxError,
  InstanceError,
  EnumerationLimitError,
  Violation,
  CheckReport,
  word_to_str,
  str_to_word,
  index_mask,
  mask_to_indices,
  render_table )

from map_ties.__about__ import __version__
