#pragma once

#include <stdexcept>
#include <string>

namespace flex {

// Base class for all domain errors thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error { public: using Error::Error; };
class IllConditioned : public Error { public: using Error::Error; };
class ZeroPolynomial : public Error { public: using Error::Error; };
class DerivativeUnavailable : public Error { public: using Error::Error; };
class NotOneSided : public Error { public: using Error::Error; };
class DenominatorVanishesElsewhere : public Error { public: using Error::Error; };
class FunctionInSpace : public Error { public: using Error::Error; };
class NotSupporting : public Error { public: using Error::Error; };
class EmptyCensus : public Error { public: using Error::Error; };
class InfiniteCount : public Error { public: using Error::Error; };
class NotConvex : public Error { public: using Error::Error; };
class CircleDegenerate : public Error { public: using Error::Error; };
class RankDeficient : public Error { public: using Error::Error; };
class ConicDegenerate : public Error { public: using Error::Error; };
class TangentLinesParallel : public Error { public: using Error::Error; };
class ParseError : public Error { public: using Error::Error; };
class IoError : public Error { public: using Error::Error; };

} // namespace flex
