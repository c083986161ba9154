#include "eigenid/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "eigenid/matrix_io.hpp"

namespace eigenid {

using nlohmann::json;

namespace {

std::uint64_t binomial_capped(int n, int k, std::uint64_t cap) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > cap) return cap + 1;  // saturated: caller only needs "too many"
  }
  return static_cast<std::uint64_t>(r);
}

int sweep_thread_count(std::size_t work) {
  if (work <= 1) return 1;
  unsigned cap = std::thread::hardware_concurrency();
  if (cap == 0) cap = 1;
  if (const char* env = std::getenv("EIGENID_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) cap = static_cast<unsigned>(v);
  }
  return static_cast<int>(std::min<std::size_t>(cap, work));
}

struct WorkItem {
  int cluster = 0;
  IndexSet subset;
};

}  // namespace

Report run_check(const HermitianMatrix& a, const CheckOptions& opts) {
  const Tolerances tols{opts.tols.eig_tol, opts.tols.max_sweeps, opts.tols.cluster_tol,
                        1e-10};
  const IdentityEvaluator eval(a, tols);
  const ClusteredSpectrum& spec = eval.spectrum();
  const int d = static_cast<int>(spec.clusters.size());

  std::vector<int> selected = opts.clusters;
  if (selected.empty()) {
    selected.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) selected[static_cast<std::size_t>(i)] = i + 1;
  } else {
    std::sort(selected.begin(), selected.end());
    selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
    for (int i : selected)
      if (i < 1 || i > d) {
        std::ostringstream os;
        os << "cluster " << i << " does not exist (spectrum has " << d << " clusters)";
        throw IndexOutOfRange(os.str());
      }
  }

  std::vector<WorkItem> work;
  if (opts.subsets.empty()) {
    for (int i : selected) {
      const EigenvalueCluster& c = spec.clusters[static_cast<std::size_t>(i - 1)];
      const std::uint64_t count = binomial_capped(spec.n, c.multiplicity, opts.max_enumeration);
      if (count > opts.max_enumeration && !opts.force) {
        std::ostringstream os;
        os << "cluster " << i << " needs more than " << opts.max_enumeration
           << " subsets; pass --force to sweep anyway";
        throw Error(os.str());
      }
      for (IndexSet& s : enumerate_subsets(spec.n, c.multiplicity))
        work.push_back(WorkItem{i, std::move(s)});
    }
  } else {
    for (const IndexSet& s : opts.subsets) {
      if (s.max_member() > spec.n)
        throw IndexOutOfRange("subset " + to_string(s) + " exceeds the matrix order");
      bool matched = false;
      for (int i : selected) {
        const EigenvalueCluster& c = spec.clusters[static_cast<std::size_t>(i - 1)];
        if (static_cast<int>(s.size()) == c.multiplicity) {
          work.push_back(WorkItem{i, s});
          matched = true;
        }
      }
      if (!matched) {
        std::ostringstream os;
        os << "subset " << to_string(s) << " (size " << s.size()
           << ") matches no selected cluster's multiplicity";
        throw SubsetSizeMismatch(os.str());
      }
    }
    std::sort(work.begin(), work.end(), [](const WorkItem& x, const WorkItem& y) {
      if (x.cluster != y.cluster) return x.cluster < y.cluster;
      return x.subset.members() < y.subset.members();
    });
  }

  std::vector<IdentityEvaluation> records(work.size());
  const int nthreads = sweep_thread_count(work.size());
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < work.size(); ++i)
      records[i] = eval.evaluate(work[i].cluster, work[i].subset);
  } else {
    std::mutex err_mu;
    std::exception_ptr first_err;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = static_cast<std::size_t>(t); i < work.size();
               i += static_cast<std::size_t>(nthreads))
            records[i] = eval.evaluate(work[i].cluster, work[i].subset);
        } catch (...) {
          const std::lock_guard<std::mutex> g(err_mu);
          if (!first_err) first_err = std::current_exception();
        }
      });
    }
    for (std::thread& th : pool) th.join();
    if (first_err) std::rethrow_exception(first_err);
  }

  Report r;
  r.input_digest = matrix_digest(a.entries());
  r.tolerances = opts.tols;
  r.gap_margin = spec.gap_margin;
  for (const EigenvalueCluster& c : spec.clusters) {
    r.cluster_values.push_back(c.value);
    r.cluster_multiplicities.push_back(c.multiplicity);
  }
  r.records = std::move(records);
  for (const IdentityEvaluation& rec : r.records)
    r.max_rel_err = std::max(r.max_rel_err, rec.rel_err);
  for (int i : selected) {
    const EigenvalueCluster& c = spec.clusters[static_cast<std::size_t>(i - 1)];
    ClusterSum cs;
    cs.cluster_index = i;
    std::uint64_t count = 0;
    for (const IdentityEvaluation& rec : r.records)
      if (rec.cluster_index == i) {
        cs.sum += rec.lhs;
        ++count;
      }
    cs.complete =
        count == binomial_capped(spec.n, c.multiplicity, std::uint64_t(-1) - 1) && count > 0;
    r.subset_sums.push_back(cs);
  }
  return r;
}

namespace {

json number_or_null(double x) {
  if (std::isinf(x)) return json();
  return json(x);
}

double number_from(const json& j, const char* what) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) throw ParseError(std::string("report: ") + what + " must be a number");
  return j.get<double>();
}

}  // namespace

std::string report_to_json(const Report& r) {
  json records = json::array();
  for (const IdentityEvaluation& rec : r.records) {
    records.push_back(json{{"cluster", rec.cluster_index},
                           {"subset", rec.subset.members()},
                           {"lhs", rec.lhs},
                           {"rhs", rec.rhs},
                           {"abs_err", rec.abs_err},
                           {"rel_err", rec.rel_err},
                           {"numerator_sign", rec.numerator_sign},
                           {"gap_margin", number_or_null(rec.gap_margin)}});
  }
  json sums = json::array();
  for (const ClusterSum& cs : r.subset_sums)
    sums.push_back(json{{"cluster", cs.cluster_index}, {"sum", cs.sum}, {"complete", cs.complete}});
  const json j{
      {"input_digest", r.input_digest},
      {"tolerances",
       {{"hermitian_tol", r.tolerances.hermitian_tol},
        {"eig_tol", r.tolerances.eig_tol},
        {"max_sweeps", r.tolerances.max_sweeps},
        {"cluster_tol", r.tolerances.cluster_tol},
        {"fail_above", r.tolerances.fail_above}}},
      {"spectrum",
       {{"values", r.cluster_values},
        {"multiplicities", r.cluster_multiplicities},
        {"gap_margin", number_or_null(r.gap_margin)}}},
      {"records", records},
      {"summary", {{"max_rel_err", r.max_rel_err}, {"subset_sums", sums}}}};
  return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
  try {
    Report r;
    r.input_digest = j.at("input_digest").get<std::string>();
    const json& t = j.at("tolerances");
    r.tolerances.hermitian_tol = t.at("hermitian_tol").get<double>();
    r.tolerances.eig_tol = t.at("eig_tol").get<double>();
    r.tolerances.max_sweeps = t.at("max_sweeps").get<int>();
    r.tolerances.cluster_tol = t.at("cluster_tol").get<double>();
    r.tolerances.fail_above = t.at("fail_above").get<double>();
    const json& s = j.at("spectrum");
    r.cluster_values = s.at("values").get<std::vector<double>>();
    r.cluster_multiplicities = s.at("multiplicities").get<std::vector<int>>();
    r.gap_margin = number_from(s.at("gap_margin"), "spectrum.gap_margin");
    for (const json& rec : j.at("records")) {
      IdentityEvaluation e;
      e.cluster_index = rec.at("cluster").get<int>();
      e.subset = IndexSet(rec.at("subset").get<std::vector<int>>());
      e.lhs = rec.at("lhs").get<double>();
      e.rhs = rec.at("rhs").get<double>();
      e.abs_err = rec.at("abs_err").get<double>();
      e.rel_err = rec.at("rel_err").get<double>();
      e.numerator_sign = rec.at("numerator_sign").get<int>();
      e.gap_margin = number_from(rec.at("gap_margin"), "record.gap_margin");
      if (e.cluster_index < 1 ||
          e.cluster_index > static_cast<int>(r.cluster_multiplicities.size()))
        throw ParseError("report: record cluster index outside the spectrum");
      const int mult =
          r.cluster_multiplicities[static_cast<std::size_t>(e.cluster_index - 1)];
      if (static_cast<int>(e.subset.size()) != mult)
        throw ParseError("report: record subset size differs from cluster multiplicity");
      r.records.push_back(std::move(e));
    }
    r.max_rel_err = j.at("summary").at("max_rel_err").get<double>();
    for (const json& cs : j.at("summary").at("subset_sums")) {
      ClusterSum c;
      c.cluster_index = cs.at("cluster").get<int>();
      c.sum = cs.at("sum").get<double>();
      c.complete = cs.at("complete").get<bool>();
      r.subset_sums.push_back(c);
    }
    return r;
  } catch (const ParseError&) {
    throw;
  } catch (const json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

std::string report_to_csv(const Report& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "cluster,subset,lhs,rhs,abs_err,rel_err,numerator_sign,gap_margin\n";
  for (const IdentityEvaluation& rec : r.records) {
    os << rec.cluster_index << ",\"";
    for (std::size_t i = 0; i < rec.subset.members().size(); ++i) {
      if (i > 0) os << ',';
      os << rec.subset.members()[i];
    }
    os << "\"," << rec.lhs << ',' << rec.rhs << ',' << rec.abs_err << ',' << rec.rel_err << ','
       << rec.numerator_sign << ',' << rec.gap_margin << '\n';
  }
  return os.str();
}

}  // namespace eigenid
