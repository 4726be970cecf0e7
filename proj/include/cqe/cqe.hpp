#pragma once

#include "cqe/censors.hpp"
#include "cqe/fo.hpp"
#include "cqe/generator.hpp"
#include "cqe/homomorphism.hpp"
#include "cqe/model.hpp"
#include "cqe/parser.hpp"
#include "cqe/reasoner.hpp"
#include "cqe/rewriting.hpp"
