#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "cmjet/jets.hpp"
#include "cmjet/normalform.hpp"
#include "cmjet/verdict.hpp"
#include "cmjet/wpoly.hpp"

namespace cmjet {

// Hypersurface files carry the full graph right-hand side h(z, zbar, u),
// including the Levi part.
struct HypersurfaceFile {
    int n = 1;
    int max_weight = 6;
    WPoly h;
};

HypersurfaceFile read_hypersurface_file(const std::string& path);
void write_hypersurface_file(const std::string& path, const HypersurfaceModel& model);
std::string hypersurface_to_json(const HypersurfaceModel& model);

// Requires the weight-2 part to be exactly ||z||^2 (run levi_normalize first
// otherwise).
HypersurfaceModel model_from_graph(const WPoly& h, int K);

JetMap read_jet_file(const std::string& path);
void write_jet_file(const std::string& path, const JetMap& jet);
std::string jet_to_json(const JetMap& jet);

RCMat read_matrix_file(const std::string& path);

void write_coord_change_file(const std::string& path, const CoordChange& change);

uint64_t fnv1a(const std::string& data);
uint64_t fnv1a_file(const std::string& path);

struct VerdictReport {
    std::string command;
    std::map<std::string, uint64_t> input_hashes;
    Verdict verdict;
    std::map<std::string, std::string> certificates;
    double elapsed_ms = 0.0;

    std::string to_json() const;
};

}  // namespace cmjet
