#pragma once

#include "fck/calculus.hpp"
#include "fck/chain_complex.hpp"
#include "fck/constructions.hpp"
#include "fck/cube.hpp"
#include "fck/error.hpp"
#include "fck/eta.hpp"
#include "fck/functor.hpp"
#include "fck/homology.hpp"
#include "fck/linalg.hpp"
#include "fck/matrix.hpp"
#include "fck/random.hpp"
#include "fck/rational.hpp"
#include "fck/ring.hpp"
#include "fck/serialize.hpp"
#include "fck/tower.hpp"
#include "fck/verify.hpp"
