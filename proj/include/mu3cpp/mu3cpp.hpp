#ifndef MU3CPP_MU3CPP_HPP
#define MU3CPP_MU3CPP_HPP

#include "arith.hpp"
#include "criteria.hpp"
#include "error.hpp"
#include "field.hpp"
#include "mu3.hpp"
#include "oracle.hpp"
#include "search.hpp"
#include "serialize.hpp"
#include "trinomial.hpp"

#endif  // MU3CPP_MU3CPP_HPP
