#pragma once

#include <stdexcept>
#include <string>

namespace dualmesh {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define DUALMESH_ERROR(Name, Base)                                  \
    class Name : public Base {                                      \
    public:                                                         \
        explicit Name(const std::string& what) : Base(what) {}      \
    }

// mesh / io
DUALMESH_ERROR(ParseError, Error);
DUALMESH_ERROR(ValidationError, Error);
DUALMESH_ERROR(IoError, Error);
DUALMESH_ERROR(NonManifoldError, ValidationError);
DUALMESH_ERROR(DegenerateFaceError, Error);

// nn / train
DUALMESH_ERROR(ShapeMismatchError, Error);
DUALMESH_ERROR(FeatureMismatchError, ShapeMismatchError);
DUALMESH_ERROR(StateMissingError, Error);
DUALMESH_ERROR(EmptySelectionError, Error);
DUALMESH_ERROR(LabelOutOfRangeError, Error);
DUALMESH_ERROR(IsolatedVertexError, Error);
DUALMESH_ERROR(ConfigError, Error);
DUALMESH_ERROR(NonFiniteError, Error);
DUALMESH_ERROR(NonFiniteLossError, NonFiniteError);

// geodesic / decimate
DUALMESH_ERROR(DisconnectedError, Error);
DUALMESH_ERROR(TargetUnreachableError, Error);

// persist
DUALMESH_ERROR(VersionError, Error);
DUALMESH_ERROR(CorruptionError, Error);

#undef DUALMESH_ERROR

}  // namespace dualmesh
