#pragma once

#include <stdexcept>
#include <string>

namespace woundsev {

// Error taxonomy. The CLI maps categories onto exit codes:
// ConfigError -> 2, DataError -> 3, PipelineError -> 4.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PipelineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// dataset manifests
struct MalformedManifest : DataError { using DataError::DataError; };
struct InvalidBox : DataError { using DataError::DataError; };
struct UnknownLabel : DataError { using DataError::DataError; };
struct DuplicateId : DataError { using DataError::DataError; };
struct EmptyDataset : DataError { using DataError::DataError; };
struct TooFewGroups : DataError { using DataError::DataError; };
struct EmptyResult : DataError { using DataError::DataError; };
struct InvalidSpec : ConfigError { using ConfigError::ConfigError; };

// raster pipeline
struct BoxOutOfRange : DataError { using DataError::DataError; };
struct AlreadyAugmented : DataError { using DataError::DataError; };

// model zoo
struct UnknownBackbone : ConfigError { using ConfigError::ConfigError; };
struct DuplicateBackbone : ConfigError { using ConfigError::ConfigError; };
struct WeightsUnavailable : PipelineError { using PipelineError::PipelineError; };
struct ShapeMismatch : PipelineError { using PipelineError::PipelineError; };
struct ArityMismatch : PipelineError { using PipelineError::PipelineError; };
struct ArtifactSpecMismatch : DataError { using DataError::DataError; };

// training / evaluation
struct LossClassMismatch : ConfigError { using ConfigError::ConfigError; };
struct EmptyValidation : DataError { using DataError::DataError; };
struct EmptyTestSet : DataError { using DataError::DataError; };
struct EmptyMatrix : DataError { using DataError::DataError; };
struct EmptyHistory : DataError { using DataError::DataError; };

// rubric
struct NegativeMeasurement : DataError { using DataError::DataError; };
struct ObservationParseError : DataError { using DataError::DataError; };

// cli
struct MissingPreparedData : DataError { using DataError::DataError; };
struct NoResults : DataError { using DataError::DataError; };

}  // namespace woundsev
