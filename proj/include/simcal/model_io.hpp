#pragma once

#include <filesystem>
#include <string>

#include "simcal/calibration.hpp"

namespace simcal {

// Everything needed to reload and re-run a model: architecture, normalizer
// statistics, base and calibrated parameters, and the training provenance.
struct ModelFile {
    AutoencoderSpec spec;
    CalibratedModel model;
    TrainConfig base_config;
    TrainConfig transfer_config;  // meaningful only when has_transfer
    bool has_transfer = false;
};

// Canonical JSON: fixed key order and exact round-trip number encoding, so
// two saves of the same model are byte-identical and load(save(m))
// reproduces predictions exactly. Hard error on non-finite parameters.
std::string save_model(const ModelFile& m);

// Strict inverse of save_model. Hard error on unknown format version,
// malformed or truncated input, shape inconsistencies, or non-finite
// values; never returns a partial model.
ModelFile load_model(const std::string& bytes);

void save_model_file(const std::filesystem::path& path, const ModelFile& m);
ModelFile load_model_file(const std::filesystem::path& path);

}  // namespace simcal
