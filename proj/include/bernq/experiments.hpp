#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bernq {

// One CSV record. Parameters that do not apply to the method stay empty.
struct ReportRow {
  std::string experiment;
  std::string method;
  std::optional<int> p, n, N, ell;
  std::optional<double> tau, z;
  double value = 0.0;
  double elapsed_s = 0.0;
};

struct ExperimentReport {
  static constexpr const char* kHeader =
      "experiment,method,p,n,N,ell,tau,z,value,elapsed_s";

  std::vector<ReportRow> rows;

  /// Orders rows by (experiment, method, p, n, N, ell, tau, z).
  void sort();
  /// Header plus one line per row. Without timing the elapsed column is
  /// left empty so repeated runs are byte-identical.
  void write_csv(std::ostream& out, bool timing = true) const;
};

struct DeltaTableConfig {
  std::vector<double> z{1.0, 0.1, 10.0};
  std::vector<int> N{512, 1024, 2048};
  /// Tail terms summed past N; must be >= max N.
  int K = 2048;
  int threads = 1;
};

struct ScalarErrorConfig {
  double w_min = -10.0;
  double w_max = 0.0;
  int points = 400;
  int N = 100;
  std::vector<double> tau{0.125, 0.0078125};
  std::vector<int> p{2, 4, 6};
  std::vector<int> ell{0, 1, 2, 3};
  /// Offset of the tau = 0 shift identity.
  double alpha = 0.125;
  /// Optional rational e^x approximant file; the builtin exp otherwise.
  std::string exp_file;
  int threads = 1;
};

struct BvpConfig {
  enum class GridChoice { uniform, geometric };
  GridChoice grid = GridChoice::uniform;
  int s = 512;
  double a = 24.0;
  double x1 = 0.01;
  double sigma = 1.005;
  std::vector<double> tau{1.0 / 12.0, 1.0 / 6.0};
  std::vector<int> N{50, 100, 200};
  /// Lanc orders p = 2n + 2.
  std::vector<int> n{2, 3, 4};
  /// FastLanc correction depths, all at order p.
  std::vector<int> ell{2, 3, 4};
  int p = 2;
  int threads = 1;
};

struct ArnoldiConfig {
  int test = 3;
  int steps = 100;
  int s = 512;
  double x1 = 0.01;
  double sigma = 1.005;
  double scale = 1e-8;
  double tau = 1.0 / 6.0;
  int p = 2;
  int N = 50;
  /// Empty selects 5 for Test 3 and 4 for Test 4.
  std::optional<int> ell;
  bool reorthogonalize = false;
};

ExperimentReport cmd_delta_table(const DeltaTableConfig& config);
ExperimentReport cmd_scalar_error(const ScalarErrorConfig& config);
ExperimentReport cmd_bvp_compare(const BvpConfig& config);
ExperimentReport cmd_arnoldi_compare(const ArnoldiConfig& config);

}  // namespace bernq
