#include "anysyn/truth_table.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

namespace anysyn
{

namespace
{

/* periodic word patterns for the first six variables */
constexpr uint64_t var_masks[6] = {
    0xaaaaaaaaaaaaaaaaull,
    0xccccccccccccccccull,
    0xf0f0f0f0f0f0f0f0ull,
    0xff00ff00ff00ff00ull,
    0xffff0000ffff0000ull,
    0xffffffff00000000ull };

uint32_t words_for( uint32_t num_vars )
{
  return num_vars <= 6 ? 1u : 1u << ( num_vars - 6 );
}

} // namespace

TruthTable::TruthTable( uint32_t num_vars )
    : num_vars_( num_vars ), words_( words_for( num_vars ), 0 )
{
  if ( num_vars > max_vars )
  {
    throw std::out_of_range( "TruthTable: more than 16 variables" );
  }
}

void TruthTable::mask_padding()
{
  if ( num_vars_ < 6 )
  {
    words_[0] &= ( uint64_t( 1 ) << ( uint64_t( 1 ) << num_vars_ ) ) - 1;
  }
}

bool TruthTable::is_const0() const
{
  for ( auto w : words_ )
  {
    if ( w != 0 )
      return false;
  }
  return true;
}

bool TruthTable::is_const1() const
{
  return *this == tt_const( num_vars_, true );
}

uint64_t TruthTable::count_ones() const
{
  uint64_t n = 0;
  for ( auto w : words_ )
  {
    n += std::popcount( w );
  }
  return n;
}

std::string TruthTable::to_hex() const
{
  static constexpr char digits[] = "0123456789abcdef";
  uint64_t nibbles = num_bits() <= 4 ? 1 : num_bits() / 4;
  std::string s( nibbles, '0' );
  for ( uint64_t i = 0; i < nibbles; ++i )
  {
    uint64_t nib = ( words_[( i * 4 ) >> 6] >> ( ( i * 4 ) & 63 ) ) & 0xf;
    if ( num_bits() < 4 )
    {
      nib &= ( 1u << num_bits() ) - 1;
    }
    s[nibbles - 1 - i] = digits[nib];
  }
  return s;
}

uint64_t TruthTable::hash() const
{
  uint64_t h = 0x9e3779b97f4a7c15ull + num_vars_;
  for ( auto w : words_ )
  {
    h ^= w + 0x9e3779b97f4a7c15ull + ( h << 6 ) + ( h >> 2 );
  }
  return h;
}

TruthTable tt_const( uint32_t num_vars, bool value )
{
  TruthTable t( num_vars );
  if ( value )
  {
    for ( auto& w : t.words_ )
    {
      w = ~uint64_t( 0 );
    }
    t.mask_padding();
  }
  return t;
}

TruthTable tt_var( uint32_t num_vars, uint32_t i )
{
  if ( i >= num_vars )
  {
    throw std::out_of_range( "tt_var: variable index out of range" );
  }
  TruthTable t( num_vars );
  if ( i < 6 )
  {
    for ( uint32_t w = 0; w < t.num_words(); ++w )
    {
      t.words()[w] = var_masks[i];
    }
    if ( num_vars < 6 )
    {
      t.words()[0] &= ( uint64_t( 1 ) << ( uint64_t( 1 ) << num_vars ) ) - 1;
    }
  }
  else
  {
    uint32_t period = 1u << ( i - 6 ); /* words */
    for ( uint32_t w = 0; w < t.num_words(); ++w )
    {
      t.words()[w] = ( w & period ) ? ~uint64_t( 0 ) : 0;
    }
  }
  return t;
}

TruthTable tt_not( TruthTable const& a )
{
  TruthTable t = a;
  for ( auto& w : t.words_ )
  {
    w = ~w;
  }
  t.mask_padding();
  return t;
}

TruthTable tt_and( TruthTable const& a, TruthTable const& b )
{
  assert( a.num_vars() == b.num_vars() );
  TruthTable t = a;
  for ( uint32_t i = 0; i < t.num_words(); ++i )
  {
    t.words_[i] &= b.words_[i];
  }
  return t;
}

TruthTable tt_xor( TruthTable const& a, TruthTable const& b )
{
  assert( a.num_vars() == b.num_vars() );
  TruthTable t = a;
  for ( uint32_t i = 0; i < t.num_words(); ++i )
  {
    t.words_[i] ^= b.words_[i];
  }
  return t;
}

TruthTable tt_apply( TableOp op, TruthTable const& a, TruthTable const* b )
{
  switch ( op )
  {
  case TableOp::Not:
    if ( b != nullptr )
    {
      throw std::invalid_argument( "tt_apply: Not takes one operand" );
    }
    return tt_not( a );
  case TableOp::And:
  case TableOp::Xor:
    if ( b == nullptr )
    {
      throw std::invalid_argument( "tt_apply: binary operator needs two operands" );
    }
    if ( a.num_vars() != b->num_vars() )
    {
      throw std::invalid_argument( "tt_apply: width mismatch" );
    }
    return op == TableOp::And ? tt_and( a, *b ) : tt_xor( a, *b );
  }
  throw std::invalid_argument( "tt_apply: unknown operator" );
}

bool implies( TruthTable const& a, TruthTable const& b )
{
  if ( a.num_vars() != b.num_vars() )
  {
    throw std::invalid_argument( "implies: width mismatch" );
  }
  for ( uint32_t i = 0; i < a.num_words(); ++i )
  {
    if ( a.words()[i] & ~b.words()[i] )
    {
      return false;
    }
  }
  return true;
}

TruthTable tt_canon( TruthTable const& t, bool* complemented )
{
  TruthTable n = tt_not( t );
  bool flip = n < t;
  if ( complemented != nullptr )
  {
    *complemented = flip;
  }
  return flip ? n : t;
}

} // namespace anysyn
