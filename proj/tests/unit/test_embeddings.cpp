#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace clonelab;
using namespace testing_helpers;

TEST( LiftOperationSet, Examples )
{
  auto X = carrier::plain( 3 );
  auto A = subcarrier( X, { 0, 1 } );
  const auto id = projection( A, 1, 1 );
  const auto S = lift_operation_set( X, id );
  EXPECT_TRUE( S( operation( X, 1, { 0, 1, 0 } ) ) );
  EXPECT_FALSE( S( operation( X, 1, { 1, 2, 0 } ) ) );
  EXPECT_FALSE( S( projection( X, 2, 1 ) ) );
  EXPECT_TRUE( lift_operation_set( X, constant( A, 1, 1 ) )( constant( X, 1, 1 ) ) );
}

TEST( PatchOperation, Examples )
{
  auto X = carrier::plain( 3 );
  const operation f( X, 1, { 2, 0, 1 } );
  const auto s = patch_operation( f, { 0, 1 } );
  EXPECT_EQ( s.arity(), 2u );
  for ( value_t y = 0; y < 3; ++y )
  {
    EXPECT_EQ( s( { 0, y } ), y );
    EXPECT_EQ( s( { 1, y } ), y );
    EXPECT_EQ( s( { 2, y } ), f( { 2 } ) );
  }
  EXPECT_EQ( patch_operation( f, { 0, 1, 2 } ), projection( X, 2, 2 ) );
}

TEST( PatchOperation, IdentityExhaustive )
{
  auto X = carrier::plain( 3 );
  for ( std::size_t m = 1; m <= 2; ++m )
  {
    const auto r = verify_patch_identity( X, { 0, 1 }, m );
    EXPECT_TRUE( r.passed() );
    EXPECT_TRUE( r.exhaustive );
    EXPECT_GT( r.checks, 0u );
  }
}

TEST( IntervalEmbedding, Examples )
{
  auto X = carrier::plain( 3 );
  auto A = subcarrier( X, { 0, 1 } );
  operation_set all( A );
  for ( std::size_t n = 1; n <= 2; ++n )
  {
    for ( const auto& f : all_operations( A, n ) )
    {
      all.insert( f );
    }
  }
  const auto image = interval_image( all, X );
  const auto polA = pol( relation_set( X, { relation( X, 1, { { 0 }, { 1 } } ) } ), 2 );
  EXPECT_EQ( image, polA );

  const auto proj = interval_image( projections_up_to( A, 2 ), X );
  for ( const auto& g : proj.all() )
  {
    EXPECT_TRUE( lift_operation_set( X, projection( A, g.arity(), 1 ) )( g ) ||
                 lift_operation_set( X, projection( A, g.arity(), g.arity() ) )( g ) );
  }

  const auto meet = clone_closure( operation_set( A, { AND( A ) } ), 2 ).ops;
  std::vector<named_fragment> samples{ { "<and>", meet }, { "all", all }, { "proj", projections_up_to( A, 2 ) } };
  const auto r = verify_interval_embedding( X, { 0, 1 }, samples );
  EXPECT_TRUE( r.passed() ) << r.to_json().dump();
  EXPECT_THROW( verify_interval_embedding( X, { 0 }, samples ), argument_error );
}

TEST( Cayley, Examples )
{
  const auto z4 = cyclic_group( 4 );
  EXPECT_EQ( cayley_operation( z4, z4.zero() ), projection( z4.elements(), 1, 1 ) );
  EXPECT_EQ( compose( cayley_operation( z4, 1 ), { cayley_operation( z4, 2 ) } ), cayley_operation( z4, 3 ) );
  EXPECT_THROW( cayley_operation( z4, 4 ), argument_error );
  for ( value_t a = 0; a < 4; ++a )
  {
    auto t = cayley_operation( z4, a ).table();
    std::sort( t.begin(), t.end() );
    EXPECT_EQ( t, ( std::vector<value_t>{ 0, 1, 2, 3 } ) );
  }
}

TEST( Cayley, Homomorphism )
{
  for ( const auto& g : { cyclic_group( 6 ), symmetric_group( 3 ), direct_product( cyclic_group( 2 ), cyclic_group( 3 ) ) } )
  {
    for ( value_t a = 0; a < g.order(); ++a )
    {
      for ( value_t b = 0; b < g.order(); ++b )
      {
        EXPECT_EQ( compose( cayley_operation( g, a ), { cayley_operation( g, b ) } ), cayley_operation( g, g.add( a, b ) ) );
      }
    }
  }
}

TEST( CayleyClone, Examples )
{
  const auto v = direct_product( cyclic_group( 2 ), cyclic_group( 2 ) );
  EXPECT_EQ( cayley_clone( v, { v.zero() } ).size(), 1u );
  const element_set h{ v.index_of( "(0,0)" ), v.index_of( "(1,0)" ) };
  EXPECT_EQ( cayley_clone( v, h ).size(), 2u );
  subgroup_lattice L( v );
  for ( const auto& s : L.subgroups() )
  {
    EXPECT_EQ( cayley_clone( v, s ).size(), s.size() );
  }
  EXPECT_THROW( cayley_clone( v, { v.index_of( "(1,0)" ) } ), argument_error );
}

TEST( SubgroupLattice, Sizes )
{
  EXPECT_EQ( subgroup_lattice( cyclic_group( 6 ) ).size(), 4u );
  EXPECT_EQ( subgroup_lattice( direct_product( cyclic_group( 2 ), cyclic_group( 2 ) ) ).size(), 5u );
  EXPECT_EQ( subgroup_lattice( symmetric_group( 3 ) ).size(), 6u );
  EXPECT_EQ( subgroup_lattice( cyclic_group( 12 ) ).size(), 6u );
}

TEST( FiniteGroup, RejectsNonGroups )
{
  EXPECT_THROW( finite_group( { "0", "1" }, { { 0, 0 }, { 0, 0 } } ), argument_error );
  EXPECT_THROW( finite_group( { "0", "1" }, { { 0, 1 } } ), argument_error );
}

TEST( CayleyLattice, Examples )
{
  const auto v = verify_cayley_lattice( subgroup_lattice( direct_product( cyclic_group( 2 ), cyclic_group( 2 ) ) ) );
  EXPECT_TRUE( v.passed() );
  EXPECT_TRUE( v.details["m3_sublattice"].get<bool>() );
  EXPECT_FALSE( v.details["is_chain"].get<bool>() );

  const auto z6 = verify_cayley_lattice( subgroup_lattice( cyclic_group( 6 ) ) );
  EXPECT_TRUE( z6.passed() );
  EXPECT_FALSE( z6.details["m3_sublattice"].get<bool>() );

  for ( std::size_t p : { 2u, 3u, 5u, 7u } )
  {
    const auto r = verify_cayley_lattice( subgroup_lattice( cyclic_group( p ) ) );
    EXPECT_TRUE( r.passed() );
    EXPECT_TRUE( r.details["is_chain"].get<bool>() );
  }
}

TEST( MonpMeet, Examples )
{
  const auto z4 = cyclic_group( 4 );
  EXPECT_TRUE( verify_monp_meet( z4, { 0, 2 }, { 0, 1, 2, 3 }, { { 0 } } ).passed() );
  EXPECT_TRUE( verify_monp_meet( z4, { 0, 2 }, { 0, 2 }, { { 1 } } ).passed() );
  const auto v = direct_product( cyclic_group( 2 ), cyclic_group( 2 ) );
  const element_set h{ v.index_of( "(0,0)" ), v.index_of( "(1,0)" ) };
  const element_set k{ v.index_of( "(0,0)" ), v.index_of( "(0,1)" ) };
  const auto r = verify_monp_meet( v, h, k, { { v.index_of( "(0,0)" ) } } );
  EXPECT_TRUE( r.passed() );
  const auto empty = verify_monp_meet( v, h, k, { {} } );
  EXPECT_FALSE( empty.warnings.empty() );
}

TEST( UnaryIndicator, Examples )
{
  auto X = carrier::plain( 5 );
  const auto f = unary_indicator( X, { 2, 3 }, 0, 1 );
  EXPECT_EQ( f( { 2 } ), 0u );
  EXPECT_EQ( f( { 3 } ), 0u );
  EXPECT_EQ( f( { 0 } ), 1u );
  EXPECT_EQ( f( { 4 } ), 1u );
  auto range = f.table();
  std::sort( range.begin(), range.end() );
  range.erase( std::unique( range.begin(), range.end() ), range.end() );
  EXPECT_EQ( range, ( std::vector<value_t>{ 0, 1 } ) );
  EXPECT_EQ( compose( f, { f } ), constant( X, 1, 1 ) );
  EXPECT_THROW( unary_indicator( X, { 0, 2 }, 0, 1 ), argument_error );
  EXPECT_THROW( unary_indicator( X, {}, 0, 1 ), argument_error );
  EXPECT_THROW( unary_indicator( X, { 2 }, 1, 1 ), argument_error );
}

TEST( MeetAntichain, Examples )
{
  auto X = carrier::plain( 5 );
  const auto r = verify_meet_antichain( X, { { 2 }, { 3 }, { 2, 4 } }, 0, 1 );
  EXPECT_TRUE( r.passed() ) << r.to_json().dump();
  const auto j = verify_join_containments( X, { { 0, 1 }, { 1, 2 }, { 0, 2 } } );
  EXPECT_TRUE( j.passed() ) << j.to_json().dump();
  EXPECT_THROW( verify_meet_antichain( X, { { 2 }, { 2 } }, 0, 1 ), argument_error );
}
