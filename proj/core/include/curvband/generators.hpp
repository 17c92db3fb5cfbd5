#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "curvband/graph.hpp"

namespace curvband {

// Parameter structs for the twelve synthetic families. Ranges are validated
// by generate(); invalid values raise ParameterError.

struct ErSpec {          // independent edges with probability p
  std::uint32_t n;
  double p;
};
struct BaSpec {          // preferential attachment from a K_m seed clique
  std::uint32_t n;
  std::uint32_t m;
};
struct WsSpec {          // ring lattice with probabilistic rewiring
  std::uint32_t n;
  std::uint32_t k;       // even, 2 <= k <= n-1
  double beta;
};
struct RggSpec {         // unit-square geometric graph, Euclidean threshold
  std::uint32_t n;
  double radius;
  bool torus_metric = false;
};
struct RegularSpec {     // stub matching with full restart on failure
  std::uint32_t n;
  std::uint32_t d;       // nd even, 0 <= d < n
};
struct HrgSpec {         // hyperbolic disk, radial density ~ alpha*sinh(alpha*r)
  std::uint32_t n;
  double radius;         // disk radius R
  double alpha;          // tail parameter
  double temperature;    // T = 0 gives the hard threshold d <= R
};
struct SbmSpec {         // planted blocks with within/between probabilities
  std::vector<std::uint32_t> block_sizes;
  double p_in;
  double p_out;
};
struct CycleSpec {
  std::uint32_t n;       // n >= 3
};
struct GridSpec {        // open rectangular lattice
  std::uint32_t lx;
  std::uint32_t ly;
};
struct TorusSpec {       // periodic rectangular lattice; lx, ly >= 3
  std::uint32_t lx;
  std::uint32_t ly;
};
struct TreeSpec {        // full d-ary tree of the given height
  std::uint32_t branching;  // d >= 2
  std::uint32_t height;     // h >= 1
};
struct CompleteSpec {
  std::uint32_t n;
};

using ModelSpec = std::variant<ErSpec, BaSpec, WsSpec, RggSpec, RegularSpec, HrgSpec,
                               SbmSpec, CycleSpec, GridSpec, TorusSpec, TreeSpec,
                               CompleteSpec>;

/// Deterministic generation: the same (spec, seed) always yields a
/// bit-identical Graph. Each call consumes an independent SplitMix64 stream.
Graph generate(const ModelSpec& spec, std::uint64_t seed);

/// Short model tag for metadata ("er", "ba", "ws", ...).
std::string model_name(const ModelSpec& spec);

/// Comma-separated "key=value" list mirroring the CLI parameter names.
std::string model_params_string(const ModelSpec& spec);

/// Builds a ModelSpec from a model tag and named parameters, as accepted by
/// the CLI (`--model er --params n=800,p=0.01`). Unknown keys or missing
/// required keys raise ParameterError.
ModelSpec parse_model_spec(const std::string& name,
                           const std::map<std::string, std::string>& params);

}  // namespace curvband
