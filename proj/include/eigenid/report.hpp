#pragma once

#include <limits>
#include <string>
#include <vector>

#include "eigenid/identity.hpp"
#include "eigenid/matrix.hpp"

namespace eigenid {

struct ReportTolerances {
  double hermitian_tol = 1e-10;
  double eig_tol = 1e-12;
  int max_sweeps = 30;
  double cluster_tol = 1e-8;
  double fail_above = 1e-6;

  bool operator==(const ReportTolerances& other) const = default;
};

// Sum of lhs values over the evaluated subsets of one cluster. `complete`
// marks a full enumeration, where the sum is contractually 1.
struct ClusterSum {
  int cluster_index = 0;
  double sum = 0.0;
  bool complete = false;

  bool operator==(const ClusterSum& other) const = default;
};

struct Report {
  std::string input_digest;
  ReportTolerances tolerances;
  std::vector<double> cluster_values;
  std::vector<int> cluster_multiplicities;
  double gap_margin = std::numeric_limits<double>::infinity();
  std::vector<IdentityEvaluation> records;  // sorted by cluster, then subset
  double max_rel_err = 0.0;
  std::vector<ClusterSum> subset_sums;

  bool operator==(const Report& other) const = default;
};

struct CheckOptions {
  ReportTolerances tols;
  std::vector<int> clusters;      // 1-based selection; empty means all
  std::vector<IndexSet> subsets;  // explicit subsets; empty means full sweep
  bool force = false;             // lift the enumeration-size refusal
  std::uint64_t max_enumeration = 1000000;
};

// Decomposes A once, then evaluates the identity for every selected
// (cluster, subset) pair. The sweep may run on several threads (capped by the
// EIGENID_THREADS environment variable) but the record order is deterministic.
Report run_check(const HermitianMatrix& a, const CheckOptions& opts = {});

// Round-trip JSON: report_from_json(report_to_json(r)) == r exactly.
// The infinite gap margin serializes as null.
std::string report_to_json(const Report& r);
Report report_from_json(const std::string& text);

// One row per record; subsets are quoted comma-joined indices.
std::string report_to_csv(const Report& r);

}  // namespace eigenid
