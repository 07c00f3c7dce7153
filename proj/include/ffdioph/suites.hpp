#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ffdioph/json_io.hpp"

namespace ffdioph {

struct SuiteOptions {
  unsigned q = 2;
  unsigned p = 0;               // 0: derive prime field from q
  unsigned kext = 1;
  std::vector<unsigned> modulus;  // required when kext > 1
  long d = 2;
  long lmax = 5;
  long samples = 200;
  uint64_t seed = 1;
  mpq_class eps = mpq_class(1, 4);
  long N = 1;
  long steps = 4;
  long bound = 3;
  long cutoff = 3;
  long degb_max = 4;
  int workers = 0;  // 0: FFDIOPH_WORKERS or hardware concurrency

  FieldPtr make() const;
};

struct SuiteReport {
  std::string suite;
  bool pass = true;
  long cases = 0;
  double seconds = 0.0;
  std::vector<std::string> failures;
  Json details = Json::object();

  void check(bool ok, const std::string& what) {
    ++cases;
    if (!ok) {
      pass = false;
      if (failures.size() < 32) failures.push_back(what);
    }
  }
};

using SuiteFn = std::function<SuiteReport(const SuiteOptions&)>;

/// Registry of lemma-keyed verification suites (phi-sum, phi-d1, minkowski,
/// point-count, covering, farey, best-approx-laws, fiber-count, upper-sums,
/// lower-structure, counting-bounds, di-certificate, bounds-formulas,
/// ultrametric, laurent-roundtrip).
const std::map<std::string, SuiteFn>& suite_registry();

/// Runs one suite; throws std::invalid_argument for unknown names.
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt);

Json suite_report_to_json(const SuiteReport& rep);

/// Worker count resolution (FFDIOPH_WORKERS override).
int resolve_workers(int requested);

/// Simple index-space parallel map: fn(i) for i in [0, n), merged in order.
void parallel_for(long n, int workers, const std::function<void(long)>& fn);

}  // namespace ffdioph
